#include "vpm/balls.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <stdexcept>

#include "vpm/errors.hpp"

namespace vpm {

namespace {

constexpr long long kL2ScenarioCap = 1LL << 20;

double ball_scale(const std::vector<Ball>& balls) {
  double s = 1.0;
  for (const Ball& b : balls) {
    s = std::max(s, std::fabs(b.radius));
    for (double c : b.center) s = std::max(s, std::fabs(c));
  }
  return s;
}

Verdict certified_yes(const Instance& inst, Vec witness, const char* solver) {
  Verdict v;
  v.solver = solver;
  const Certification cert = verify_witness(inst, witness);
  assert(cert.pass());
  v.yes = cert.pass();
  v.witness = std::move(witness);
  v.scores = cert.tally.scores;
  v.target_ranks = cert.tally.target_ranks;
  v.budget_slack = cert.budget_slack;
  return v;
}

void require_real_l2(const Instance& inst, const char* who) {
  if (inst.issue_space != IssueSpace::real)
    throw std::invalid_argument(std::string(who) + " requires real-valued issues");
  if (inst.norm.is_inf() || inst.norm.p != 2)
    throw std::invalid_argument(std::string(who) + " requires the Euclidean norm");
}

// Scenario ball family under one objective; infinite radii impose nothing.
std::vector<Ball> breakpoint_balls(const Instance& grouped, const ScorePartition& partition) {
  std::vector<Ball> balls;
  balls.push_back({grouped.target(), grouped.epsilon});
  for (int g = 0; g < grouped.num_voter_rows(); ++g) {
    const RankThresholds thr = rank_thresholds(grouped, g, partition);
    for (int t : partition.breakpoints) {
      const double radius = thr.by_rank[t - 1];
      if (!std::isinf(radius)) balls.push_back({grouped.voters[g], radius});
    }
  }
  return balls;
}

long long subsets_up_to(long long n, long long k, long long clamp) {
  long long total = 0;
  long long binom = 1;
  for (long long s = 1; s <= std::min(n, k); ++s) {
    binom = binom * (n - s + 1) / s;
    total += binom;
    if (total > clamp) return clamp + 1;
  }
  return total;
}

void dedup_points(std::vector<Vec>& pts, double scale) {
  std::vector<Vec> kept;
  for (const Vec& p : pts) {
    bool dup = false;
    for (const Vec& q : kept) {
      double m = 0;
      for (size_t j = 0; j < p.size(); ++j) m = std::max(m, std::fabs(p[j] - q[j]));
      if (m <= kTol * scale) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(p);
  }
  pts = std::move(kept);
}

}  // namespace

SphereSystem reduce_sphere_subset(const std::vector<Ball>& spheres) {
  SphereSystem sys;
  const int d = spheres.empty() ? 0 : static_cast<int>(spheres[0].center.size());
  if (spheres.empty()) throw std::invalid_argument("need at least one sphere");
  if (static_cast<int>(spheres.size()) > d + 1)
    throw std::invalid_argument("at most d+1 spheres per subset");
  const double scale = ball_scale(spheres);

  // Coincident spheres collapse to one member; same center with a different
  // radius makes the system inconsistent.
  for (const Ball& b : spheres) {
    bool dup = false;
    for (const Ball& kept : sys.spheres) {
      double cdist = 0;
      for (int j = 0; j < d; ++j) cdist = std::max(cdist, std::fabs(b.center[j] - kept.center[j]));
      if (cdist <= kTol * scale) {
        dup = true;
        if (std::fabs(b.radius - kept.radius) > kTol * scale) sys.consistent = false;
        break;
      }
    }
    if (!dup) sys.spheres.push_back(b);
  }
  if (!sys.consistent) return sys;

  const int m = static_cast<int>(sys.spheres.size());
  const Ball& first = sys.spheres[0];
  Eigen::VectorXd c1 = Eigen::Map<const Eigen::VectorXd>(first.center.data(), d);

  Eigen::VectorXd x0;          // a point of the radical subspace
  Eigen::MatrixXd null_basis;  // orthonormal columns spanning it
  if (m == 1) {
    x0 = c1;
    null_basis = Eigen::MatrixXd::Identity(d, d);
  } else {
    // Subtracting sphere equations pairwise gives the linear system
    // 2(c_i - c_1) . x = |c_i|^2 - |c_1|^2 + r_1^2 - r_i^2.
    Eigen::MatrixXd A(m - 1, d);
    Eigen::VectorXd rhs(m - 1);
    for (int i = 1; i < m; ++i) {
      Eigen::VectorXd ci = Eigen::Map<const Eigen::VectorXd>(sys.spheres[i].center.data(), d);
      A.row(i - 1) = 2.0 * (ci - c1).transpose();
      rhs(i - 1) = ci.squaredNorm() - c1.squaredNorm() + first.radius * first.radius -
                   sys.spheres[i].radius * sys.spheres[i].radius;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeFullV);
    svd.setThreshold(1e-12);
    x0 = svd.solve(rhs);
    sys.solve_residual = (A * x0 - rhs).norm() / std::max(1.0, rhs.norm());
    if (sys.solve_residual > kTol) {
      sys.consistent = false;  // radical hyperplanes do not meet
      return sys;
    }
    const int rank = static_cast<int>(svd.rank());
    null_basis = svd.matrixV().rightCols(d - rank);
  }
  const int s = static_cast<int>(null_basis.cols());
  sys.subspace_dim = s;

  // Intersect the first sphere with x0 + N t: the reduced sphere in t-space
  // has center -u and squared radius r^2 - |q_perp|^2.
  Eigen::VectorXd q = x0 - c1;
  Eigen::VectorXd u = null_basis.transpose() * q;
  const double perp_sq = q.squaredNorm() - u.squaredNorm();
  const double rho_sq = first.radius * first.radius - perp_sq;
  const double tol_sq = kTol * scale * scale;

  auto emit = [&](const Eigen::VectorXd& t) {
    Eigen::VectorXd x = x0 + null_basis * t;
    sys.points.emplace_back(x.data(), x.data() + d);
  };

  if (s == 0) {
    if (std::fabs(q.squaredNorm() - first.radius * first.radius) <= tol_sq) emit(u);
    return sys;
  }
  if (rho_sq < -tol_sq) return sys;  // subspace misses the sphere
  const double rho = std::sqrt(std::max(0.0, rho_sq));
  Eigen::VectorXd tc = -u;
  if (s == 1) {
    Eigen::VectorXd t = tc;
    t(0) += rho;
    emit(t);
    if (rho > kTol * scale) {
      t(0) = tc(0) - rho;
      emit(t);
    }
  } else {
    // Positive-dimensional intersection: one canonical point, the reduced
    // center pushed by the radius along the first basis vector.
    Eigen::VectorXd t = tc;
    t(0) += rho;
    emit(t);
  }
  return sys;
}

std::vector<Vec> sphere_subset_representatives(const std::vector<Ball>& spheres) {
  return reduce_sphere_subset(spheres).points;
}

std::vector<Vec> representative_points(const std::vector<Ball>& balls, long long subset_cap) {
  if (balls.empty()) return {};
  const int d = static_cast<int>(balls[0].center.size());
  const int n = static_cast<int>(balls.size());
  const int max_size = std::min(d, n);
  if (subsets_up_to(n, max_size, subset_cap) > subset_cap)
    throw RefusalError("sphere subset count over " + std::to_string(n) + " balls exceeds " +
                       std::to_string(subset_cap) +
                       "; beyond a constant number of issues the problem is NP-complete");

  std::vector<Vec> points;
  std::vector<Ball> subset;
  std::vector<int> pick;
  auto recurse = [&](auto&& self, int start) -> void {
    if (!subset.empty()) {
      const auto reps = sphere_subset_representatives(subset);
      points.insert(points.end(), reps.begin(), reps.end());
    }
    if (static_cast<int>(subset.size()) == max_size) return;
    for (int i = start; i < n; ++i) {
      subset.push_back(balls[i]);
      self(self, i + 1);
      subset.pop_back();
    }
  };
  recurse(recurse, 0);
  dedup_points(points, ball_scale(balls));
  return points;
}

long long l2_subset_count(const Instance& inst) {
  const Instance grouped = collapse_to_groups(inst);
  const ScorePartition partition = score_partition(inst.scoring, inst.objective);
  const long long n = static_cast<long long>(breakpoint_balls(grouped, partition).size());
  return subsets_up_to(n, std::min<long long>(inst.dimension, n), kDefaultSubsetCap);
}

Verdict solve_l2_constant_issues(const Instance& inst, const SolveOptions& opt) {
  require_real_l2(inst, "solve_l2_constant_issues");
  inst.validate();

  const Instance grouped = collapse_to_groups(inst);
  const ElectionContext ctx(grouped);
  const ScorePartition partition = score_partition(inst.scoring, inst.objective);
  const std::vector<Ball> balls = breakpoint_balls(grouped, partition);

  std::vector<Vec> points = representative_points(balls);
  points.insert(points.begin(), inst.target());  // zero manipulation first

  Verdict verdict;
  verdict.solver = "l2-issues";
  verdict.scenarios_total = ScenarioSpace(grouped.num_voter_rows(), partition).total;

  auto wins = [&](long long i) {
    const Vec& p = points[i];
    if (!approx_le(distance(p, inst.target(), inst.norm), inst.epsilon)) return false;
    return ctx.success(p, inst.objective);
  };
  const ScanResult scan = scan_first(static_cast<long long>(points.size()), opt, wins);
  verdict.points_examined = scan.evaluated;
  if (scan.index == kNotFound) return verdict;

  Verdict v = certified_yes(inst, points[scan.index], "l2-issues");
  v.scenarios_total = verdict.scenarios_total;
  v.points_examined = verdict.points_examined;
  return v;
}

Verdict solve_l2_constant_voters(const Instance& inst, const SolveOptions& opt) {
  require_real_l2(inst, "solve_l2_constant_voters");
  inst.validate();

  const Instance grouped = collapse_to_groups(inst);
  const ElectionContext ctx(grouped);
  const ScorePartition partition = score_partition(inst.scoring, inst.objective);
  const int G = grouped.num_voter_rows();

  std::vector<RankThresholds> thresholds(G);
  for (int g = 0; g < G; ++g) thresholds[g] = rank_thresholds(grouped, g, partition);

  const ScenarioSpace scenarios(G, partition);
  if (scenarios.total > kL2ScenarioCap)
    throw RefusalError("scenario space " + std::to_string(scenarios.total) +
                       " exceeds the enumeration cap; with this many distinct opinions the "
                       "problem is NP-complete (destructive even with two candidates and "
                       "majority voting, constructive for plurality voting)");

  Verdict verdict;
  verdict.solver = "l2-voters";
  verdict.scenarios_total = scenarios.total;
  std::atomic<long long> points_count{0};

  const bool constructive = inst.objective == Objective::constructive;

  auto evaluate = [&](long long index) -> std::optional<Vec> {
    const std::vector<int> t = scenarios.ranks(index);

    std::vector<Ball> balls;
    balls.push_back({inst.target(), inst.epsilon});
    for (int g = 0; g < G; ++g) {
      const double radius = thresholds[g].by_rank[t[g] - 1];
      if (!std::isinf(radius)) balls.push_back({grouped.voters[g], radius});
    }

    std::vector<Vec> candidates = representative_points(balls);
    candidates.insert(candidates.begin(), inst.target());
    for (const Vec& p : candidates) {
      if (!approx_le(distance(p, inst.target(), inst.norm), inst.epsilon)) continue;
      bool scenario_ok = true;
      for (size_t b = 1; b < balls.size() && scenario_ok; ++b) {
        const double dist = distance(p, balls[b].center, inst.norm);
        // Closed containment for wins, open-ball avoidance (face contact
        // counts as outside) for losses.
        scenario_ok = constructive ? approx_le(dist, balls[b].radius)
                                   : approx_ge(dist, balls[b].radius);
      }
      if (!scenario_ok) continue;
      points_count.fetch_add(1, std::memory_order_relaxed);
      if (ctx.success(p, inst.objective)) return p;
    }
    return std::nullopt;
  };

  const ScanResult scan = scan_first(scenarios.total, opt,
                                     [&](long long i) { return evaluate(i).has_value(); });
  verdict.scenarios_solved = scan.evaluated;
  verdict.points_examined = points_count.load();
  if (scan.index == kNotFound) return verdict;

  Verdict v = certified_yes(inst, *evaluate(scan.index), "l2-voters");
  v.scenarios_total = verdict.scenarios_total;
  v.scenarios_solved = verdict.scenarios_solved;
  v.points_examined = verdict.points_examined;
  return v;
}

}  // namespace vpm
