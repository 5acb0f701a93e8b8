#include <doctest.h>

#include <random>

#include "vpm/boxes.hpp"
#include "vpm/oracle.hpp"

using namespace vpm;

namespace {

Instance real_instance(std::vector<Vec> candidates, std::vector<Vec> voters, NormSpec norm,
                       double eps, Objective obj, const char* scoring = "plurality") {
  Instance inst;
  inst.issue_space = IssueSpace::real;
  inst.dimension = static_cast<int>(candidates[0].size());
  const int n = static_cast<int>(candidates.size());
  inst.candidates = std::move(candidates);
  inst.voters = std::move(voters);
  inst.norm = norm;
  inst.scoring = std::string(scoring) == "borda" ? ScoringRule::borda(n)
                                                 : ScoringRule::plurality(n);
  inst.objective = obj;
  inst.epsilon = eps;
  return inst;
}

Instance random_linf(std::mt19937_64& rng, int max_d, int max_n, int max_m,
                     Objective obj) {
  std::uniform_real_distribution<double> coord(-2, 2);
  std::uniform_real_distribution<double> eps(0, 2);
  const int d = 1 + static_cast<int>(rng() % max_d);
  const int n = 2 + static_cast<int>(rng() % (max_n - 1));
  const int m = 1 + static_cast<int>(rng() % max_m);
  std::vector<Vec> cands, voters;
  for (int i = 0; i < n; ++i) {
    Vec c(d);
    for (int k = 0; k < d; ++k) c[k] = coord(rng);
    cands.push_back(std::move(c));
  }
  for (int j = 0; j < m; ++j) {
    Vec v(d);
    for (int k = 0; k < d; ++k) v[k] = coord(rng);
    voters.push_back(std::move(v));
  }
  Instance inst = real_instance(std::move(cands), std::move(voters), NormSpec::linf(),
                                eps(rng), obj, rng() % 2 ? "borda" : "plurality");
  return inst;
}

}  // namespace

TEST_CASE("two-candidate closed form") {
  {
    const Instance inst =
        real_instance({{0, 0}, {3, -1}}, {{1, 1}}, NormSpec::linf(), 2, Objective::constructive);
    const Verdict v = two_candidate_constructive(inst);
    // the computed point is (2, -1) whatever the election outcome
    const Vec expect{2, -1};
    if (v.yes) CHECK(v.witness == expect);
    const Certification cert = verify_witness(inst, expect);
    CHECK(cert.budget_ok);
  }
  {
    // full budget: land on the rival and win by favorable ties
    const Instance inst =
        real_instance({{0, 0}, {1, 1}}, {{5, 5}, {-4, 0}}, NormSpec::linf(), 3,
                      Objective::constructive);
    const Verdict v = two_candidate_constructive(inst);
    REQUIRE(v.yes);
    CHECK(v.witness == Vec{1, 1});
  }
  {
    // no budget: the decision is the unmanipulated election's
    const Instance inst =
        real_instance({{0, 0}, {2, 0}}, {{0.2, 0}}, NormSpec::linf(), 0, Objective::constructive);
    const Verdict v = two_candidate_constructive(inst);
    CHECK(v.yes == tally_and_decide(inst, inst.target()).target_wins);
  }
}

TEST_CASE("per-scenario box intersection") {
  const auto witness = box_scenario_constructive({0, 0}, 1.0, {Box{{1.5, 0}, 1.0}});
  REQUIRE(witness.has_value());
  CHECK((*witness)[0] == doctest::Approx(0.75));
  CHECK((*witness)[1] == doctest::Approx(0.0));

  CHECK_FALSE(box_scenario_constructive({0, 0}, 1.0, {Box{{5, 0}, 1.0}}).has_value());

  const auto corner = box_scenario_constructive({0, 0}, 1.0, {Box{{1, 0}, 0.0}});
  REQUIRE(corner.has_value());
  CHECK((*corner)[0] == doctest::Approx(1.0));
}

TEST_CASE("endpoint grid clips faces to the budget interval") {
  {
    const std::vector<Box> boxes{Box{{0.5}, 0.7}};
    const DimensionEndpoints grid = endpoint_grid(boxes, Vec{0}, 1.0);
    REQUIRE(grid.coords[0].size() == 1);  // 1.2 clipped away
    CHECK(grid.coords[0][0] == doctest::Approx(-0.2));
    CHECK(avoid_cover_set(grid.coords[0][0], 0, boxes) == std::vector<int>{1});
    CHECK(avoid_cover_set(0.0, 0, boxes).empty());
  }
  {
    const DimensionEndpoints grid = endpoint_grid({}, Vec{0.3, -1}, 1.0);
    CHECK(grid.coords[0] == std::vector<double>{0.3});
    CHECK(grid.coords[1] == std::vector<double>{-1.0});
  }
  {
    std::vector<Box> boxes;
    for (int i = 0; i < 5; ++i) boxes.push_back(Box{{0.1 * i}, 0.05 + 0.1 * i});
    const DimensionEndpoints grid = endpoint_grid(boxes, Vec{0}, 1.0);
    CHECK(grid.coords[0].size() <= 2 * boxes.size());
  }
}

TEST_CASE("grid coordinates sit on box faces or the center, inside the budget") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> coord(-3, 3);
  std::uniform_real_distribution<double> radius(0, 2);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 4);
    Vec y(d);
    for (double& x : y) x = coord(rng);
    const double eps = radius(rng);
    std::vector<Box> boxes;
    for (int b = 0; b < 4; ++b) {
      Vec c(d);
      for (double& x : c) x = coord(rng);
      boxes.push_back({std::move(c), radius(rng)});
    }
    const DimensionEndpoints grid = endpoint_grid(boxes, y, eps);
    for (int j = 0; j < d; ++j)
      for (double p : grid.coords[j]) {
        CHECK(p >= y[j] - eps);
        CHECK(p <= y[j] + eps);
        bool on_face = p == y[j];
        for (const Box& b : boxes)
          on_face |= p == b.center[j] - b.radius || p == b.center[j] + b.radius;
        CHECK(on_face);
      }
  }
}

TEST_CASE("cube-avoidance feasibility: hand cases") {
  {
    const auto p = feasibility_constant_constraints(Vec{0}, 1.0, {Box{{0.5}, 0.7}});
    REQUIRE(p.has_value());
    CHECK((*p)[0] == doctest::Approx(-0.2));
  }
  // a cube covering the whole reachable interval on every dimension
  CHECK_FALSE(feasibility_constant_constraints(Vec{0, 0}, 1.0, {Box{{0, 0}, 3.0}}).has_value());
  // zero-radius cubes constrain nothing
  CHECK(feasibility_constant_constraints(Vec{0, 0}, 0.5, {Box{{0, 0}, 0.0}}).has_value());
}

TEST_CASE("cube-avoidance feasibility matches the naive cross product") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 400; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 2);
    const int k = 1 + static_cast<int>(rng() % 2);
    // dyadic rationals keep every comparison exact
    auto dyadic = [&](double lo, double hi) {
      const double step = 0.125;
      const long long n = static_cast<long long>((hi - lo) / step);
      return lo + step * static_cast<double>(rng() % (n + 1));
    };
    Vec y(d);
    for (int j = 0; j < d; ++j) y[j] = dyadic(-1, 1);
    const double eps = dyadic(0.125, 2);
    std::vector<Box> cubes;
    for (int i = 0; i < k; ++i) {
      Vec c(d);
      for (int j = 0; j < d; ++j) c[j] = dyadic(-2, 2);
      cubes.push_back({std::move(c), dyadic(0.125, 2)});
    }
    const auto fast = feasibility_constant_constraints(y, eps, cubes);
    const auto naive = naive_feasibility(y, eps, cubes);
    REQUIRE_MESSAGE(fast.has_value() == naive.has_value(), "trial " << trial);
    if (fast) {
      for (int j = 0; j < d; ++j) CHECK(std::fabs((*fast)[j] - y[j]) <= eps);
      for (const Box& b : cubes) {
        double m = 0;
        for (int j = 0; j < d; ++j) m = std::max(m, std::fabs((*fast)[j] - b.center[j]));
        CHECK(m >= b.radius);  // zero violation
      }
    }
  }
}

TEST_CASE("constant-issues grid solver agrees with the closed form on 2 candidates") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = random_linf(rng, 2, 2, 4, Objective::constructive);
    const Verdict closed = two_candidate_constructive(inst);
    const Verdict grid = solve_linf_constant_issues(inst);
    REQUIRE_MESSAGE(closed.yes == grid.yes, "trial " << trial);
    if (grid.yes) CHECK(verify_witness(inst, grid.witness).pass());
  }
}

TEST_CASE("constant-issues grid solver agrees with the endpoint oracle") {
  std::mt19937_64 rng(19);
  for (int obj = 0; obj < 2; ++obj) {
    for (int trial = 0; trial < 60; ++trial) {
      const Instance inst = random_linf(
          rng, 2, 3, 3, obj == 0 ? Objective::constructive : Objective::destructive);
      const Verdict grid = solve_linf_constant_issues(inst);
      const OracleReport oracle = endpoint_oracle_linf(inst);
      REQUIRE_MESSAGE(grid.yes == oracle.yes, "objective " << obj << " trial " << trial);
      if (grid.yes) CHECK(verify_witness(inst, grid.witness).pass());
    }
  }
  // a few three-dimensional rounds to catch axis mix-ups
  for (int obj = 0; obj < 2; ++obj) {
    for (int trial = 0; trial < 15; ++trial) {
      Instance inst = random_linf(
          rng, 1, 3, 2, obj == 0 ? Objective::constructive : Objective::destructive);
      while (inst.dimension != 3) {
        inst = random_linf(rng, 3, 3, 2,
                           obj == 0 ? Objective::constructive : Objective::destructive);
      }
      const Verdict grid = solve_linf_constant_issues(inst);
      const OracleReport oracle = endpoint_oracle_linf(inst);
      REQUIRE_MESSAGE(grid.yes == oracle.yes, "d3 objective " << obj << " trial " << trial);
    }
  }
}

TEST_CASE("zero budget reduces to the unmanipulated election") {
  std::mt19937_64 rng(23);
  for (int obj = 0; obj < 2; ++obj) {
    Instance inst = random_linf(rng, 3, 3, 4,
                                obj == 0 ? Objective::constructive : Objective::destructive);
    inst.epsilon = 0;
    const Verdict v = solve_linf_constant_issues(inst);
    CHECK(v.yes == tally_and_decide(inst, inst.target()).success(inst.objective));
  }
}

TEST_CASE("constant-voters solver handles weighted electorates") {
  std::mt19937_64 rng(29);
  for (int obj = 0; obj < 2; ++obj) {
    for (int trial = 0; trial < 30; ++trial) {
      Instance inst = random_linf(rng, 2, 3, 2,
                                  obj == 0 ? Objective::constructive : Objective::destructive);
      // inflate the two voter rows into thousands of voters
      inst.weights.assign(inst.voters.size(), 5000);
      const Verdict voters_solver = solve_linf_constant_voters(inst);
      const Verdict grid = solve_linf_constant_issues(inst);
      REQUIRE_MESSAGE(voters_solver.yes == grid.yes, "objective " << obj << " trial " << trial);
      if (voters_solver.yes) CHECK(verify_witness(inst, voters_solver.witness).pass());
    }
  }
}

TEST_CASE("constant-voters agrees with the endpoint oracle at d = 3") {
  std::mt19937_64 rng(41);
  for (int obj = 0; obj < 2; ++obj) {
    for (int trial = 0; trial < 20; ++trial) {
      Instance inst = random_linf(rng, 3, 3, 4,
                                  obj == 0 ? Objective::constructive : Objective::destructive);
      while (inst.dimension != 3)
        inst = random_linf(rng, 3, 3, 4,
                           obj == 0 ? Objective::constructive : Objective::destructive);
      const Verdict v = solve_linf_constant_voters(inst);
      const OracleReport oracle = endpoint_oracle_linf(inst);
      REQUIRE_MESSAGE(v.yes == oracle.yes, "objective " << obj << " trial " << trial);
      if (v.yes) CHECK(verify_witness(inst, v.witness).pass());
    }
  }
}

TEST_CASE("all-vacuous scenarios") {
  // destructive thresholds of 1 everywhere: the current position already
  // qualifies, so the decision is the direct tally
  Instance inst = real_instance({{0, 0}, {4, 4}}, {{0.1, 0}, {3, 3}}, NormSpec::linf(), 0.5,
                                Objective::destructive);
  const Verdict v = solve_linf_constant_voters(inst);
  CHECK(v.yes == tally_and_decide(inst, inst.target()).target_loses);

  // constructive with every rank achievable: the budget cube alone, witness
  // stays at the target
  Instance cons = real_instance({{0, 0}, {9, 9}}, {{0.1, 0.1}}, NormSpec::linf(), 0.5,
                                Objective::constructive);
  const Verdict w = solve_linf_constant_voters(cons);
  REQUIRE(w.yes);
  CHECK(verify_witness(cons, w.witness).pass());
}

TEST_CASE("constructive scenario feasibility is monotone in the scenario") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = random_linf(rng, 3, 3, 3, Objective::constructive);
    const Instance grouped = collapse_to_groups(inst);
    const ScorePartition part = score_partition(inst.scoring, Objective::constructive);
    std::vector<RankThresholds> thr;
    for (int g = 0; g < grouped.num_voter_rows(); ++g)
      thr.push_back(rank_thresholds(grouped, g, part));

    const ScenarioSpace space(grouped.num_voter_rows(), part);
    for (long long a = 0; a < space.total; ++a) {
      const std::vector<int> ta = space.ranks(a);
      std::vector<Box> boxes_a;
      for (size_t g = 0; g < ta.size(); ++g)
        boxes_a.push_back({grouped.voters[g], thr[g].by_rank[ta[g] - 1]});
      if (!box_scenario_constructive(inst.target(), inst.epsilon, boxes_a)) continue;
      // relaxing any component must stay feasible
      for (size_t g = 0; g < ta.size(); ++g) {
        for (int t : part.breakpoints) {
          if (t <= ta[g]) continue;
          std::vector<Box> boxes_b = boxes_a;
          boxes_b[g].radius = thr[g].by_rank[t - 1];
          CHECK(box_scenario_constructive(inst.target(), inst.epsilon, boxes_b).has_value());
        }
      }
    }
  }
}
