#include "vpm/bvpm.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <map>
#include <numeric>
#include <stdexcept>

#include "vpm/errors.hpp"

namespace vpm {

namespace {

constexpr long long kScenarioCap = 1LL << 24;

}  // namespace

Vec relabel_mask(const Vec& target) {
  Vec mask(target.size());
  for (size_t k = 0; k < target.size(); ++k) mask[k] = 1.0 - target[k];
  return mask;
}

Vec apply_mask(const Vec& pos, const Vec& mask) {
  Vec out(pos.size());
  for (size_t k = 0; k < pos.size(); ++k) out[k] = pos[k] != mask[k] ? 1.0 : 0.0;
  return out;
}

std::vector<EquivalenceClass> issue_equivalence_classes(
    const std::vector<Vec>& relabeled_groups, int dimension) {
  std::vector<EquivalenceClass> classes;
  std::map<std::vector<int8_t>, size_t> seen;
  const int groups = static_cast<int>(relabeled_groups.size());
  for (int k = 0; k < dimension; ++k) {
    std::vector<int8_t> column(groups);
    for (int g = 0; g < groups; ++g) column[g] = relabeled_groups[g][k] == 1.0 ? 1 : 0;
    auto [it, inserted] = seen.emplace(column, classes.size());
    if (inserted) {
      EquivalenceClass cls;
      cls.issues.push_back(k);
      cls.sign.resize(groups);
      for (int g = 0; g < groups; ++g) cls.sign[g] = column[g] ? 1 : -1;
      classes.push_back(std::move(cls));
    } else {
      classes[it->second].issues.push_back(k);
    }
  }
  return classes;
}

long long FlipPlan::total() const {
  return std::accumulate(per_class.begin(), per_class.end(), 0LL);
}

std::optional<FlipPlan> scenario_feasibility(const std::vector<EquivalenceClass>& classes,
                                             const std::vector<long long>& rhs,
                                             long long budget, Objective objective) {
  const int L = static_cast<int>(classes.size());
  const int G = classes.empty() ? static_cast<int>(rhs.size())
                                : static_cast<int>(classes[0].sign.size());
  const bool constructive = objective == Objective::constructive;

  // Remaining flip capacity per sign and group, over classes i..L-1.
  std::vector<std::vector<long long>> suffix_pos(L + 1, std::vector<long long>(G, 0));
  std::vector<std::vector<long long>> suffix_neg(L + 1, std::vector<long long>(G, 0));
  for (int i = L - 1; i >= 0; --i)
    for (int g = 0; g < G; ++g) {
      suffix_pos[i][g] = suffix_pos[i + 1][g] + (classes[i].sign[g] > 0 ? classes[i].size() : 0);
      suffix_neg[i][g] = suffix_neg[i + 1][g] + (classes[i].sign[g] < 0 ? classes[i].size() : 0);
    }

  std::vector<long long> x(L, 0);
  std::vector<long long> cur(G, 0);

  auto satisfied = [&](int g) {
    if (rhs[g] == kVacuous) return true;
    return constructive ? cur[g] <= rhs[g] : cur[g] >= rhs[g];
  };
  auto reachable = [&](int i, long long budget_left) {
    for (int g = 0; g < G; ++g) {
      if (rhs[g] == kVacuous) continue;
      if (constructive) {
        const long long best = cur[g] - std::min(budget_left, suffix_neg[i][g]);
        if (best > rhs[g]) return false;
      } else {
        const long long best = cur[g] + std::min(budget_left, suffix_pos[i][g]);
        if (best < rhs[g]) return false;
      }
    }
    return true;
  };

  // Depth-first over flip counts, smallest first, pruned by what the
  // remaining classes can still contribute under the leftover budget.
  auto dfs = [&](auto&& self, int i, long long budget_left) -> bool {
    if (!reachable(i, budget_left)) return false;
    if (i == L) {
      for (int g = 0; g < G; ++g)
        if (!satisfied(g)) return false;
      return true;
    }
    const long long cap = std::min(classes[i].size(), budget_left);
    for (long long v = 0; v <= cap; ++v) {
      x[i] = v;
      if (v > 0)
        for (int g = 0; g < G; ++g) cur[g] += classes[i].sign[g];
      if (self(self, i + 1, budget_left - v)) return true;
    }
    for (int g = 0; g < G; ++g) cur[g] -= x[i] * classes[i].sign[g];
    x[i] = 0;
    return false;
  };

  if (!dfs(dfs, 0, budget)) return std::nullopt;
  return FlipPlan{x};
}

Vec apply_flips(const Vec& target, const std::vector<EquivalenceClass>& classes,
                const FlipPlan& plan) {
  if (plan.per_class.size() != classes.size())
    throw std::invalid_argument("flip plan does not match the class list");
  Vec out = target;
  for (size_t i = 0; i < classes.size(); ++i) {
    const long long v = plan.per_class[i];
    if (v < 0 || v > classes[i].size())
      throw std::invalid_argument("flip count exceeds class size");
    for (long long k = 0; k < v; ++k) out[classes[i].issues[k]] = 0.0;
  }
  return out;
}

std::optional<Vec> binary_point_outside(const std::vector<Vec>& positions, int dimension) {
  std::vector<size_t> alive(positions.size());
  std::iota(alive.begin(), alive.end(), 0);
  Vec point(dimension, 0.0);
  for (int k = 0; k < dimension && !alive.empty(); ++k) {
    size_t ones = 0;
    for (size_t idx : alive) ones += positions[idx][k] == 1.0;
    const double pick = ones * 2 <= alive.size() ? 1.0 : 0.0;  // minority value
    point[k] = pick;
    std::vector<size_t> next;
    for (size_t idx : alive)
      if (positions[idx][k] == pick) next.push_back(idx);
    alive = std::move(next);
  }
  if (!alive.empty()) return std::nullopt;  // positions cover the hypercube
  return point;
}

namespace {

// eps >= 1 under the Chebyshev norm frees the whole hypercube, and the
// outcome only depends on which distinct voter position (if any) the moved
// target coincides with. Rival copies are kept for the report's sake.
Verdict solve_linf_binary(const Instance& inst, const Instance& grouped,
                          const ElectionContext& ctx) {
  Verdict verdict;
  verdict.solver = "bvpm";
  std::vector<Vec> candidates;
  candidates.push_back(inst.target());
  if (inst.epsilon >= 1.0) {
    for (int i = 1; i < inst.num_candidates(); ++i) candidates.push_back(inst.candidates[i]);
    for (const Vec& v : grouped.voters) candidates.push_back(v);
    if (auto outside = binary_point_outside(grouped.voters, inst.dimension))
      candidates.push_back(*outside);
  }
  for (const Vec& c : candidates) {
    ++verdict.points_examined;
    if (!ctx.success(c, inst.objective)) continue;
    const Certification cert = verify_witness(inst, c);
    if (!cert.pass()) continue;
    verdict.yes = true;
    verdict.witness = c;
    verdict.scores = cert.tally.scores;
    verdict.target_ranks = cert.tally.target_ranks;
    verdict.budget_slack = cert.budget_slack;
    return verdict;
  }
  return verdict;
}

}  // namespace

Verdict solve_bvpm(const Instance& inst, const SolveOptions& opt) {
  if (inst.issue_space != IssueSpace::binary)
    throw std::invalid_argument("bvpm solver requires a binary instance");
  inst.validate();

  const Instance grouped = collapse_to_groups(inst);
  const ElectionContext ctx(grouped);
  const int G = grouped.num_voter_rows();

  if (inst.norm.is_inf()) return solve_linf_binary(inst, grouped, ctx);

  const long long budget = binary_flip_budget(inst.epsilon, inst.norm, inst.dimension);

  // Run everything with the target relabeled to all-ones; Hamming
  // distances, and therefore the election, are unchanged.
  const Vec mask = relabel_mask(inst.target());
  std::vector<Vec> rel_groups(G);
  for (int g = 0; g < G; ++g) rel_groups[g] = apply_mask(grouped.voters[g], mask);
  const Vec rel_target(inst.dimension, 1.0);

  const std::vector<EquivalenceClass> classes =
      issue_equivalence_classes(rel_groups, inst.dimension);

  const ScorePartition partition = score_partition(inst.scoring, inst.objective);
  const int n = inst.num_candidates();

  // Exact integer thresholds: (d_g^t)^p is the Hamming distance to the
  // relevant rival, since binary coordinates make |x-y|^p = |x-y|.
  std::vector<long long> d0_pow(G);
  std::vector<std::vector<long long>> rank_pow(G, std::vector<long long>(n));
  for (int g = 0; g < G; ++g) {
    d0_pow[g] = hamming(inst.target(), grouped.voters[g]);
    std::vector<long long> rivals;
    for (int i = 1; i < n; ++i) rivals.push_back(hamming(inst.candidates[i], grouped.voters[g]));
    std::sort(rivals.begin(), rivals.end());
    for (int t = 1; t <= n; ++t) {
      if (inst.objective == Objective::constructive)
        rank_pow[g][t - 1] = t <= n - 1 ? rivals[t - 1] : kVacuous;
      else
        rank_pow[g][t - 1] = t == 1 ? kVacuous : rivals[t - 2];
    }
  }

  const ScenarioSpace scenarios(G, partition);
  if (scenarios.total > kScenarioCap)
    throw RefusalError("scenario space " + std::to_string(scenarios.total) +
                       " exceeds the enumeration cap; manipulation with this many distinct "
                       "opinions is NP-complete even with 2 candidates and majority voting");

  Verdict verdict;
  verdict.solver = "bvpm";
  verdict.scenarios_total = scenarios.total;
  std::atomic<long long> points{0};

  auto evaluate = [&](long long index) -> std::optional<Vec> {
    const std::vector<int> t = scenarios.ranks(index);
    std::vector<long long> rhs(G);
    for (int g = 0; g < G; ++g) {
      const long long thr = rank_pow[g][t[g] - 1];
      rhs[g] = thr == kVacuous ? kVacuous : thr - d0_pow[g];
    }
    const auto plan = scenario_feasibility(classes, rhs, budget, inst.objective);
    if (!plan) return std::nullopt;
    Vec witness = apply_mask(apply_flips(rel_target, classes, *plan), mask);
    points.fetch_add(1, std::memory_order_relaxed);
    if (!ctx.success(witness, inst.objective)) return std::nullopt;
    return witness;
  };

  const ScanResult scan = scan_first(scenarios.total, opt,
                                     [&](long long i) { return evaluate(i).has_value(); });
  verdict.scenarios_solved = scan.evaluated;
  verdict.points_examined = points.load();
  if (scan.index == kNotFound) return verdict;

  const Vec witness = *evaluate(scan.index);
  const Certification cert = verify_witness(inst, witness);
  assert(cert.pass());
  verdict.yes = cert.pass();
  verdict.witness = witness;
  verdict.scores = cert.tally.scores;
  verdict.target_ranks = cert.tally.target_ranks;
  verdict.budget_slack = cert.budget_slack;
  return verdict;
}

}  // namespace vpm
