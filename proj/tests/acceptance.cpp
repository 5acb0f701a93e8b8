// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Every threshold is pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "vpm/balls.hpp"
#include "vpm/boxes.hpp"
#include "vpm/bvpm.hpp"
#include "vpm/dispatch.hpp"
#include "vpm/generate.hpp"
#include "vpm/oracle.hpp"
#include "vpm/reductions.hpp"

using namespace vpm;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what, const std::string& detail) {
  std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion, what.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

long long votes_won(const Instance& inst, const Vec& point) {
  long long votes = 0;
  for (int j = 0; j < inst.num_voter_rows(); ++j) {
    const double td = distance(point, inst.voters[j], inst.norm);
    bool first = true;
    for (int i = 1; i < inst.num_candidates(); ++i)
      first &= !approx_lt(distance(inst.candidates[i], inst.voters[j], inst.norm), td);
    if (first) votes += inst.voter_weight(j);
  }
  return votes;
}

// 1. Solver/brute-force agreement over the full small-instance regime.
void criterion_1() {
  std::mt19937_64 rng(20250801);
  const char* scorings[] = {"plurality", "veto", "borda", "k_approval"};
  int mismatches = 0, uncertified = 0, yes_count = 0;
  const double t0 = now_ms();
  for (int trial = 0; trial < 500; ++trial) {
    RandomInstanceSpec spec;
    spec.issue_space = IssueSpace::binary;
    spec.dimension = 1 + static_cast<int>(rng() % 10);
    spec.candidates = spec.dimension == 1 ? 2 : 2 + static_cast<int>(rng() % 2);
    spec.voters = 1 + static_cast<int>(rng() % 3);
    spec.norm = NormSpec::lp(1 + static_cast<int>(rng() % 3));
    spec.scoring = scorings[rng() % 4];
    spec.approval_k = std::min(2, spec.candidates);
    spec.objective = (rng() & 1) ? Objective::constructive : Objective::destructive;
    spec.epsilon = std::uniform_real_distribution<double>(0.0, spec.dimension + 1.0)(rng);
    const Instance inst = random_instance(spec, rng());

    const Verdict verdict = solve_bvpm(inst);
    const OracleReport oracle = brute_force_bvpm(inst);
    if (verdict.yes != oracle.yes) ++mismatches;
    if (verdict.yes) {
      ++yes_count;
      if (!verify_witness(inst, verdict.witness).pass()) ++uncertified;
    }
  }
  const double elapsed = (now_ms() - t0) / 1000.0;
  report(1, mismatches == 0 && uncertified == 0 && elapsed < 60.0,
         "binary solver agrees with brute force on 500 seeded instances",
         std::to_string(yes_count) + " YES, " + std::to_string(mismatches) + " mismatches, " +
             std::to_string(uncertified) + " uncertified, " + std::to_string(elapsed) + " s");
}

// 2. Grouped scaling: decisions match the collapsed instance, the scenario
// count is exactly r^3, and runtime grows at most like m^1.2.
void criterion_2() {
  std::mt19937_64 rng(20250802);
  const std::vector<long long> sizes{1000, 10000, 100000};
  bool decisions_ok = true, scenarios_ok = true;
  std::vector<double> mean_ms(sizes.size(), 0.0);
  const int trials = 5;

  for (size_t si = 0; si < sizes.size(); ++si) {
    for (int trial = 0; trial < trials; ++trial) {
      RandomInstanceSpec spec;
      spec.issue_space = IssueSpace::binary;
      spec.dimension = 10;
      spec.candidates = 3;
      spec.voters = sizes[si];
      spec.groups = 3;
      spec.norm = NormSpec::lp(1);
      spec.scoring = "borda";
      spec.objective = (trial & 1) ? Objective::constructive : Objective::destructive;
      spec.epsilon = 2 + static_cast<double>(trial % 3);
      const Instance grouped = random_instance(spec, rng());

      Instance expanded = grouped;
      expanded.voters.clear();
      expanded.weights.clear();
      for (int i = 0; i < grouped.num_voter_rows(); ++i)
        for (long long k = 0; k < grouped.voter_weight(i); ++k)
          expanded.voters.push_back(grouped.voters[i]);

      SolveOptions opt;
      opt.parallel = false;
      const double t0 = now_ms();
      const Verdict big = solve_bvpm(expanded, opt);
      mean_ms[si] += (now_ms() - t0) / trials;
      const Verdict collapsed = solve_bvpm(grouped, opt);

      decisions_ok &= big.yes == collapsed.yes;
      scenarios_ok &= big.scenarios_total == 27 && collapsed.scenarios_total == 27;
    }
  }
  const double slope = std::log(mean_ms[2] / mean_ms[0]) /
                       std::log(static_cast<double>(sizes[2]) / sizes[0]);
  report(2, decisions_ok && scenarios_ok && slope <= 1.2,
         "opinion-group scaling at |Q| = 3",
         "decisions " + std::string(decisions_ok ? "match" : "diverge") + ", scenarios " +
             (scenarios_ok ? "= 27" : "off") + ", log-log slope " + std::to_string(slope));
}

// 3. Two-candidate closed form dominates sampling and matches the exact
// coverage oracle, under 10 ms per instance.
void criterion_3() {
  std::mt19937_64 rng(20250803);
  std::uniform_real_distribution<double> coord(-2, 2);
  bool dominated = true, oracle_match = true, fast = true;
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 6);
    const int m = 1 + static_cast<int>(rng() % 50);
    Instance inst;
    inst.issue_space = IssueSpace::real;
    inst.dimension = d;
    Vec c1(d), c2(d);
    for (int k = 0; k < d; ++k) {
      c1[k] = coord(rng);
      c2[k] = coord(rng);
    }
    inst.candidates = {c1, c2};
    for (int j = 0; j < m; ++j) {
      Vec v(d);
      for (int k = 0; k < d; ++k) v[k] = coord(rng);
      inst.voters.push_back(std::move(v));
    }
    inst.norm = NormSpec::linf();
    inst.scoring = ScoringRule::plurality(2);
    inst.objective = Objective::constructive;
    inst.epsilon = std::uniform_real_distribution<double>(0.1, 2.0)(rng);

    const double t0 = now_ms();
    Vec moved(d);
    {
      const Verdict v = two_candidate_constructive(inst);
      if (v.yes)
        moved = v.witness;
      else
        for (int k = 0; k < d; ++k) {
          const double gap = c2[k] - c1[k];
          const double sign = gap > 0 ? 1.0 : gap < 0 ? -1.0 : 0.0;
          moved[k] = c1[k] + sign * std::min(std::fabs(gap), inst.epsilon);
        }
    }
    fast &= (now_ms() - t0) < 10.0;

    const long long closed_votes = votes_won(inst, moved);
    std::uniform_real_distribution<double> unit(-1, 1);
    for (int s = 0; s < 10000; ++s) {
      Vec p(d);
      for (int k = 0; k < d; ++k) p[k] = c1[k] + inst.epsilon * unit(rng);
      if (votes_won(inst, p) > closed_votes) {
        dominated = false;
        break;
      }
    }
    const OracleReport oracle = endpoint_oracle_linf(inst);
    oracle_match &= oracle.best_target_votes == closed_votes;
  }
  report(3, dominated && oracle_match && fast,
         "two-candidate closed form is optimal on 200 instances",
         std::string(dominated ? "dominates sampling" : "beaten by a sample") + ", oracle " +
             (oracle_match ? "matches" : "differs") + (fast ? "" : ", too slow"));
}

// 4. Cube-avoidance feasibility agrees with the naive cross product, returns
// violation-free points, and runs linearly in the dimension.
void criterion_4() {
  std::mt19937_64 rng(20250804);
  auto dyadic = [&](double lo, double hi) {
    const double step = 0.125;
    const long long n = static_cast<long long>((hi - lo) / step);
    return lo + step * static_cast<double>(rng() % (n + 1));
  };

  int mismatches = 0, violations = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 8);
    const int k = 1 + static_cast<int>(rng() % 4);
    Vec y(d);
    for (int j = 0; j < d; ++j) y[j] = dyadic(-1, 1);
    const double eps = dyadic(0.125, 2);
    std::vector<Box> cubes;
    for (int i = 0; i < k; ++i) {
      Vec c(d);
      for (int j = 0; j < d; ++j) c[j] = dyadic(-2, 2);
      cubes.push_back({std::move(c), dyadic(0.125, 2)});
    }
    const auto fast_point = feasibility_constant_constraints(y, eps, cubes);
    const auto naive = naive_feasibility(y, eps, cubes, 200000000);
    if (fast_point.has_value() != naive.has_value()) ++mismatches;
    if (fast_point) {
      for (int j = 0; j < d; ++j)
        if (std::fabs((*fast_point)[j] - y[j]) > eps) ++violations;
      for (const Box& b : cubes) {
        double md = 0;
        for (int j = 0; j < d; ++j) md = std::max(md, std::fabs((*fast_point)[j] - b.center[j]));
        if (md < b.radius) ++violations;
      }
    }
  }

  // full-scan timing: unavoidable cubes force the per-dimension loop to run
  // to the end
  std::vector<double> times;
  for (const int d : {8, 64, 512}) {
    const Vec y(d, 0.0);
    std::vector<Box> cubes(4, Box{Vec(d, 0.0), 10.0});
    const int reps = 3000;
    const double t0 = now_ms();
    for (int rep = 0; rep < reps; ++rep)
      if (feasibility_constant_constraints(y, 1.0, cubes)) ++violations;
    times.push_back((now_ms() - t0) / reps);
  }
  const double slope = std::log(times[2] / times[0]) / std::log(512.0 / 8.0);
  report(4, mismatches == 0 && violations == 0 && slope <= 1.2,
         "cube-avoidance feasibility matches the naive oracle on 500 problems",
         std::to_string(mismatches) + " mismatches, " + std::to_string(violations) +
             " violations, runtime slope " + std::to_string(slope));
}

// 5 and 6. Chebyshev round-trips against ground-truth satisfiability.
void sat_round_trip(int criterion, bool constructive) {
  std::mt19937_64 rng(constructive ? 20250806 : 20250805);
  int mismatches = 0, bad_decodes = 0, bad_gadgets = 0;
  const double t0 = now_ms();
  for (int trial = 0; trial < 100; ++trial) {
    const int vars = 3 + static_cast<int>(rng() % 6);
    const int clauses = 1 + static_cast<int>(rng() % 15);
    const SatFormula f = random_3sat(vars, clauses, rng());
    const bool satisfiable = sat_brute_force(f).has_value();

    const ReductionOutput out =
        constructive ? sat_to_rvpm_constructive_linf(f) : sat_to_rvpm_destructive_linf(f);
    if (constructive) {
      const int gadgets = 7 * f.num_clauses();
      for (int i = 0; i < gadgets; ++i)
        if (distance(out.instance.voters[i], out.instance.candidates[1 + i],
                     NormSpec::linf()) != 0.5)
          ++bad_gadgets;
    }
    const Verdict verdict = solve_with(out.instance, "auto");
    if (verdict.yes != satisfiable) {
      ++mismatches;
      continue;
    }
    if (verdict.yes && !f.satisfied(decode_assignment(out, verdict.witness))) ++bad_decodes;
  }
  const double elapsed = (now_ms() - t0) / 1000.0;
  report(criterion, mismatches == 0 && bad_decodes == 0 && bad_gadgets == 0 && elapsed < 120.0,
         std::string("3-SAT round trip, ") + (constructive ? "constructive" : "destructive") +
             " Chebyshev control, 100 formulas",
         std::to_string(mismatches) + " mismatches, " + std::to_string(bad_decodes) +
             " bad decodes, " + std::to_string(bad_gadgets) + " gadget distance misses, " +
             std::to_string(elapsed) + " s");
}

// 7. Issue-subset control reduces faithfully to binary manipulation.
void criterion_7() {
  std::mt19937_64 rng(20250807);
  int mismatches = 0, bad_subsets = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 7);
    const int m = 1 + static_cast<int>(rng() % 8);
    const int p = 1 + static_cast<int>(rng() % 3);
    const BiscInstance bisc = random_bisc(d, m, rng());
    const ReductionOutput out = bisc_to_bvpm(bisc, p);
    const Verdict verdict = solve_bvpm(out.instance);
    const OracleReport oracle = bisc_brute_force(bisc);
    if (verdict.yes != oracle.yes) {
      ++mismatches;
      continue;
    }
    if (verdict.yes) {
      const std::vector<int> subset = decode_issue_subset(out, verdict.witness);
      if (subset.empty() || !bisc_wins_subset(bisc, subset)) ++bad_subsets;
    }
  }
  report(7, mismatches == 0 && bad_subsets == 0,
         "issue-subset reduction agrees with brute force on 100 instances",
         std::to_string(mismatches) + " mismatches, " + std::to_string(bad_subsets) +
             " bad decoded subsets");
}

// 8. Sphere-arrangement soundness at d = 2: residuals, certification, and a
// one-sided sampling cross-check on NO answers.
void criterion_8() {
  std::mt19937_64 rng(20250808);
  std::uniform_real_distribution<double> coord(-2, 2);
  int bad_residuals = 0, uncertified = 0, counterexamples = 0, no_count = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const int m = 1 + static_cast<int>(rng() % 3);
    Instance inst;
    inst.issue_space = IssueSpace::real;
    inst.dimension = 2;
    for (int i = 0; i < n; ++i) inst.candidates.push_back({coord(rng), coord(rng)});
    for (int j = 0; j < m; ++j) inst.voters.push_back({coord(rng), coord(rng)});
    inst.norm = NormSpec::lp(2);
    inst.scoring = rng() % 2 ? ScoringRule::borda(n) : ScoringRule::plurality(n);
    inst.objective = (rng() & 1) ? Objective::constructive : Objective::destructive;
    inst.epsilon = std::uniform_real_distribution<double>(0.05, 2.0)(rng);

    // residual check over every boundary subset the solver would touch
    const Instance grouped = collapse_to_groups(inst);
    const ScorePartition partition = score_partition(inst.scoring, inst.objective);
    std::vector<Ball> balls{{inst.target(), inst.epsilon}};
    for (int g = 0; g < grouped.num_voter_rows(); ++g) {
      const RankThresholds thr = rank_thresholds(grouped, g, partition);
      for (int t : partition.breakpoints)
        if (!std::isinf(thr.by_rank[t - 1]))
          balls.push_back({grouped.voters[g], thr.by_rank[t - 1]});
    }
    const int max_size = std::min<int>(2, static_cast<int>(balls.size()));
    std::vector<int> idx;
    auto subsets = [&](auto&& self, size_t start) -> void {
      if (!idx.empty()) {
        std::vector<Ball> subset;
        for (int i : idx) subset.push_back(balls[i]);
        const SphereSystem sys = reduce_sphere_subset(subset);
        for (const Vec& p : sys.points)
          for (const Ball& b : sys.spheres)
            if (std::fabs(distance(p, b.center, inst.norm) - b.radius) >= 1e-9) ++bad_residuals;
      }
      if (static_cast<int>(idx.size()) == max_size) return;
      for (size_t i = start; i < balls.size(); ++i) {
        idx.push_back(static_cast<int>(i));
        self(self, i + 1);
        idx.pop_back();
      }
    };
    subsets(subsets, 0);

    const Verdict verdict = solve_l2_constant_issues(inst);
    if (verdict.yes) {
      if (!verify_witness(inst, verdict.witness).pass()) ++uncertified;
    } else {
      ++no_count;
      if (sampling_oracle(inst, 1000000, 20250808 + trial).yes) ++counterexamples;
    }
  }
  report(8, bad_residuals == 0 && uncertified == 0 && counterexamples == 0,
         "sphere-arrangement solver soundness at d = 2",
         std::to_string(bad_residuals) + " residual misses, " + std::to_string(uncertified) +
             " uncertified YES, " + std::to_string(counterexamples) +
             " sampling counterexamples over " + std::to_string(no_count) +
             " NO answers (one-sided 10^6-sample check)");
}

// 9. Structural facts of the l_p constructions: loyal far voters and
// two-sided parameter margins.
void criterion_9() {
  std::mt19937_64 rng(20250809);
  int loyalty_misses = 0, margin_misses = 0;
  for (int p : {2, 3}) {
    for (int d = 4; d <= 8; ++d) {
      const int vars = d - 1;
      const SatFormula f = random_3sat(vars, 2 * vars, rng());
      {
        const ReductionOutput out = sat_to_rvpm_destructive_lp(f, p);
        const double a = out.instance.candidates[1][out.instance.dimension - 1];
        if (!(out.instance.epsilon + 1e-9 < a)) ++loyalty_misses;  // a + eps < 2a
        // recompute the inequality chain from the stored parameters
        const double inv_d = 1.0 / d;
        const double alpha = out.alpha, ell = out.ell;
        const double common = (d - 4) * std::pow(inv_d, p) +
                              std::pow(inv_d + ell * alpha, p) - 3 * std::pow(alpha, p) -
                              std::pow(ell * alpha, p);
        const double upper = std::pow(inv_d + alpha, p) +
                             2 * std::pow(std::fabs(inv_d - alpha), p) + common;
        const double lower = 3 * std::pow(std::fabs(inv_d - alpha), p) + common;
        const double target = std::pow(inv_d + 1.0, p) + std::pow(inv_d, p) * (d - 1) - 1.0;
        if (!(upper - target >= 1e-9 && target - lower >= 1e-9)) ++margin_misses;
      }
      {
        const ReductionOutput out = sat_to_rvpm_constructive_lp(f, p);
        const EnclosingBallParams ball = enclosing_ball_params(vars + 1, p);
        const double c = ball.center_coeff;
        const double alpha = out.alpha, ell = out.ell;
        const double common = (vars + 1 - 4) * std::pow(c, p) +
                              std::pow(std::fabs(ell * alpha - c), p);
        const double upper = 3 * std::pow(alpha + c, p) + common;
        const double lower = std::pow(std::fabs(alpha - c), p) +
                             2 * std::pow(alpha + c, p) + common;
        const double target = std::pow(ball.radius, p);
        if (!(upper - target >= 1e-9 && target - lower >= 1e-9)) ++margin_misses;
      }
    }
  }
  report(9, loyalty_misses == 0 && margin_misses == 0,
         "l_p construction structural facts at p in {2,3}, d in {4..8}",
         std::to_string(loyalty_misses) + " loyalty misses, " + std::to_string(margin_misses) +
             " margin misses");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  sat_round_trip(5, /*constructive=*/false);
  sat_round_trip(6, /*constructive=*/true);
  criterion_7();
  criterion_8();
  criterion_9();
  if (failures == 0)
    std::printf("all acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
