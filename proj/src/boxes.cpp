#include "vpm/boxes.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vpm/errors.hpp"

namespace vpm {

namespace {

constexpr long long kGridCap = 1LL << 22;
constexpr long long kScenarioCap = 1LL << 20;

void require_real_linf(const Instance& inst, const char* who) {
  if (inst.issue_space != IssueSpace::real)
    throw std::invalid_argument(std::string(who) + " requires real-valued issues");
  if (!inst.norm.is_inf())
    throw std::invalid_argument(std::string(who) + " requires the Chebyshev norm");
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

// Scenario boxes for one opinion group under the instance's objective; the
// infinite constructive radius imposes nothing and is dropped.
std::vector<Box> scenario_boxes(const std::vector<Vec>& positions,
                                const std::vector<RankThresholds>& thresholds,
                                const std::vector<int>& t) {
  std::vector<Box> boxes;
  for (size_t g = 0; g < positions.size(); ++g) {
    const double radius = thresholds[g].by_rank[t[g] - 1];
    if (std::isinf(radius)) continue;
    boxes.push_back({positions[g], radius});
  }
  return boxes;
}

}  // namespace

Vec DimensionEndpoints::point(long long index) const {
  Vec p(coords.size());
  point_into(index, p);
  return p;
}

void DimensionEndpoints::point_into(long long index, Vec& out) const {
  out.resize(coords.size());
  for (int j = static_cast<int>(coords.size()) - 1; j >= 0; --j) {
    const long long r = static_cast<long long>(coords[j].size());
    out[j] = coords[j][index % r];
    index /= r;
  }
}

DimensionEndpoints endpoint_grid(const std::vector<Box>& boxes, const Vec& y, double eps) {
  const int d = static_cast<int>(y.size());
  DimensionEndpoints grid;
  grid.coords.resize(d);
  for (int j = 0; j < d; ++j) {
    std::vector<double>& pj = grid.coords[j];
    for (const Box& b : boxes) {
      for (const double face : {b.center[j] - b.radius, b.center[j] + b.radius})
        if (face >= y[j] - eps && face <= y[j] + eps) pj.push_back(face);
    }
    if (pj.empty()) pj.push_back(y[j]);
    std::sort(pj.begin(), pj.end());
    pj.erase(std::unique(pj.begin(), pj.end()), pj.end());
    if (grid.total > kGridCap / static_cast<long long>(pj.size()))
      grid.total = std::numeric_limits<long long>::max();
    else
      grid.total *= static_cast<long long>(pj.size());
  }
  return grid;
}

std::vector<int> avoid_cover_set(double coord, int dim, const std::vector<Box>& cubes) {
  std::vector<int> covered;
  for (size_t i = 0; i < cubes.size(); ++i)
    if (std::fabs(coord - cubes[i].center[dim]) >= cubes[i].radius)
      covered.push_back(static_cast<int>(i) + 1);
  return covered;
}

Verdict two_candidate_constructive(const Instance& inst, const SolveOptions&) {
  require_real_linf(inst, "two_candidate_constructive");
  if (inst.num_candidates() != 2)
    throw std::invalid_argument("two_candidate_constructive requires exactly 2 candidates");
  if (inst.objective != Objective::constructive)
    throw std::invalid_argument("two_candidate_constructive requires constructive control");
  inst.validate();

  const Vec& c1 = inst.target();
  const Vec& c2 = inst.candidates[1];
  Vec moved(inst.dimension);
  for (int j = 0; j < inst.dimension; ++j) {
    const double gap = c2[j] - c1[j];
    const double sign = gap > 0 ? 1.0 : gap < 0 ? -1.0 : 0.0;
    moved[j] = c1[j] + sign * std::min(std::fabs(gap), inst.epsilon);
  }

  const Certification cert = verify_witness(inst, moved);
  Verdict v;
  v.solver = "two-cand";
  v.points_examined = 1;
  if (cert.pass()) {
    v.yes = true;
    v.witness = std::move(moved);
    v.scores = cert.tally.scores;
    v.target_ranks = cert.tally.target_ranks;
    v.budget_slack = cert.budget_slack;
  }
  return v;
}

std::optional<Vec> box_scenario_constructive(const Vec& center, double eps,
                                             const std::vector<Box>& voter_boxes) {
  const int d = static_cast<int>(center.size());
  Vec witness(d);
  for (int j = 0; j < d; ++j) {
    double lo = center[j] - eps;
    double hi = center[j] + eps;
    for (const Box& b : voter_boxes) {
      if (std::isinf(b.radius)) continue;
      lo = std::max(lo, b.center[j] - b.radius);
      hi = std::min(hi, b.center[j] + b.radius);
    }
    if (!approx_le(lo, hi)) return std::nullopt;
    witness[j] = std::clamp((lo + hi) / 2, center[j] - eps, center[j] + eps);
  }
  return witness;
}

long long linf_grid_size(const Instance& inst) {
  const Instance grouped = collapse_to_groups(inst);
  const ScorePartition partition = score_partition(inst.scoring, inst.objective);
  std::vector<Box> boxes;
  for (int g = 0; g < grouped.num_voter_rows(); ++g) {
    const RankThresholds thr = rank_thresholds(grouped, g, partition);
    for (int t : partition.breakpoints) {
      const double radius = thr.by_rank[t - 1];
      if (!std::isinf(radius)) boxes.push_back({grouped.voters[g], radius});
    }
  }
  boxes.push_back({inst.target(), inst.epsilon});
  return endpoint_grid(boxes, inst.target(), inst.epsilon).total;
}

Verdict solve_linf_constant_issues(const Instance& inst, const SolveOptions& opt) {
  require_real_linf(inst, "solve_linf_constant_issues");
  inst.validate();

  const Instance grouped = collapse_to_groups(inst);
  const ElectionContext ctx(grouped);
  const ScorePartition partition = score_partition(inst.scoring, inst.objective);

  std::vector<Box> boxes;
  for (int g = 0; g < grouped.num_voter_rows(); ++g) {
    const RankThresholds thr = rank_thresholds(grouped, g, partition);
    for (int t : partition.breakpoints) {
      const double radius = thr.by_rank[t - 1];
      if (!std::isinf(radius)) boxes.push_back({grouped.voters[g], radius});
    }
  }
  // The budget cube participates with its own faces; every grid point then
  // stays inside the budget by construction.
  boxes.push_back({inst.target(), inst.epsilon});

  const DimensionEndpoints grid = endpoint_grid(boxes, inst.target(), inst.epsilon);
  if (grid.total > kGridCap)
    throw RefusalError("representative grid has " + std::to_string(grid.total) +
                       " points over " + std::to_string(inst.dimension) +
                       " dimensions; beyond a constant number of issues the problem is "
                       "NP-complete (destructive even with two candidates and majority "
                       "voting, constructive for plurality voting)");

  Verdict verdict;
  verdict.solver = "linf-issues";
  verdict.scenarios_total = ScenarioSpace(grouped.num_voter_rows(), partition).total;

  auto wins = [&](long long i) {
    static thread_local Vec scratch;
    grid.point_into(i, scratch);
    return ctx.success(scratch, inst.objective);
  };
  const ScanResult scan = scan_first(grid.total, opt, wins);
  verdict.points_examined = scan.evaluated;
  if (scan.index == kNotFound) return verdict;
  return [&] {
    Verdict v = certified_yes(inst, grid.point(scan.index), "linf-issues");
    v.scenarios_total = verdict.scenarios_total;
    v.points_examined = verdict.points_examined;
    return v;
  }();
}

std::optional<Vec> feasibility_constant_constraints(const Vec& y, double eps,
                                                    const std::vector<Box>& cubes) {
  const int d = static_cast<int>(y.size());

  // Zero-radius cubes are avoided by every point.
  std::vector<const Box*> active;
  for (const Box& b : cubes)
    if (b.radius > 0) active.push_back(&b);
  const int k = static_cast<int>(active.size());
  if (k == 0) return y;
  if (k > 62) throw std::invalid_argument("constraint count exceeds the bitmask width");
  const uint64_t full = (1ULL << k) - 1;

  struct Entry {
    uint64_t mask;
    Vec coords;  // one coordinate per processed dimension
  };

  auto endpoints_for = [&](int j) {
    std::vector<double> pj;
    for (const Box* b : active)
      for (const double face : {b->center[j] - b->radius, b->center[j] + b->radius})
        if (face >= y[j] - eps && face <= y[j] + eps) pj.push_back(face);
    if (pj.empty()) pj.push_back(y[j]);
    std::sort(pj.begin(), pj.end());
    pj.erase(std::unique(pj.begin(), pj.end()), pj.end());
    return pj;
  };
  auto cover_mask = [&](int j, double coord) {
    uint64_t m = 0;
    for (int i = 0; i < k; ++i)
      if (std::fabs(coord - active[i]->center[j]) >= active[i]->radius) m |= 1ULL << i;
    return m;
  };
  // Distinct per-dimension cover sets with a representative coordinate each
  // (first in ascending coordinate order).
  auto dim_sets = [&](int j) {
    std::vector<std::pair<uint64_t, double>> sets;
    for (double coord : endpoints_for(j)) {
      const uint64_t m = cover_mask(j, coord);
      bool dup = false;
      for (auto& [mm, cc] : sets) dup |= mm == m;
      if (!dup) sets.emplace_back(m, coord);
    }
    return sets;
  };

  auto pad = [&](const Vec& coords) {
    Vec out = coords;
    for (int j = static_cast<int>(coords.size()); j < d; ++j) out.push_back(y[j]);
    return out;
  };
  // Keep the family pairwise incomparable: drop entries whose cover set is
  // contained in another's (first entry survives exact duplicates).
  auto prune = [](std::vector<Entry>& family) {
    std::vector<Entry> kept;
    for (size_t a = 0; a < family.size(); ++a) {
      bool dominated = false;
      for (size_t b = 0; b < family.size() && !dominated; ++b) {
        if (a == b) continue;
        const bool subset = (family[a].mask & ~family[b].mask) == 0;
        if (subset && (family[a].mask != family[b].mask || b < a)) dominated = true;
      }
      if (!dominated) kept.push_back(std::move(family[a]));
    }
    family = std::move(kept);
  };

  std::vector<Entry> family;
  for (auto& [m, coord] : dim_sets(0)) {
    if (m == full) return pad({coord});
    family.push_back({m, {coord}});
  }
  prune(family);

  for (int j = 1; j < d; ++j) {
    const auto sets = dim_sets(j);
    std::vector<Entry> merged;
    for (const Entry& e : family)
      for (auto& [m, coord] : sets) {
        if ((m & ~e.mask) == 0) continue;  // adds nothing
        Entry next{e.mask | m, e.coords};
        next.coords.push_back(coord);
        if (next.mask == full) return pad(next.coords);
        merged.push_back(std::move(next));
      }
    for (Entry& e : family) e.coords.push_back(y[j]);
    for (Entry& e : merged) family.push_back(std::move(e));
    prune(family);
    for (size_t a = 0; a < family.size(); ++a)
      for (size_t b = a + 1; b < family.size(); ++b)
        if ((family[a].mask & ~family[b].mask) == 0 ||
            (family[b].mask & ~family[a].mask) == 0)
          throw std::logic_error("cover family lost pairwise incomparability");
  }
  return std::nullopt;
}

Verdict solve_linf_constant_voters(const Instance& inst, const SolveOptions& opt) {
  require_real_linf(inst, "solve_linf_constant_voters");
  inst.validate();

  const Instance grouped = collapse_to_groups(inst);
  const ElectionContext ctx(grouped);
  const ScorePartition partition = score_partition(inst.scoring, inst.objective);
  const int G = grouped.num_voter_rows();

  std::vector<RankThresholds> thresholds(G);
  for (int g = 0; g < G; ++g) thresholds[g] = rank_thresholds(grouped, g, partition);

  const ScenarioSpace scenarios(G, partition);
  if (scenarios.total > kScenarioCap)
    throw RefusalError("scenario space " + std::to_string(scenarios.total) +
                       " exceeds the enumeration cap; with this many distinct opinions the "
                       "problem is NP-complete (destructive even with two candidates and "
                       "majority voting, constructive for plurality voting)");

  Verdict verdict;
  verdict.solver = "linf-voters";
  verdict.scenarios_total = scenarios.total;
  std::atomic<long long> points{0};

  auto evaluate = [&](long long index) -> std::optional<Vec> {
    const std::vector<int> t = scenarios.ranks(index);
    std::optional<Vec> candidate;
    if (inst.objective == Objective::constructive) {
      candidate = box_scenario_constructive(inst.target(), inst.epsilon,
                                            scenario_boxes(grouped.voters, thresholds, t));
    } else {
      std::vector<Box> cubes;
      for (int g = 0; g < G; ++g) {
        const double radius = thresholds[g].by_rank[t[g] - 1];
        if (radius > 0) cubes.push_back({grouped.voters[g], radius});
      }
      candidate = feasibility_constant_constraints(inst.target(), inst.epsilon, cubes);
    }
    if (!candidate) return std::nullopt;
    points.fetch_add(1, std::memory_order_relaxed);
    if (!ctx.success(*candidate, inst.objective)) return std::nullopt;
    return candidate;
  };

  const ScanResult scan = scan_first(scenarios.total, opt,
                                     [&](long long i) { return evaluate(i).has_value(); });
  verdict.scenarios_solved = scan.evaluated;
  verdict.points_examined = points.load();
  if (scan.index == kNotFound) return verdict;

  Verdict v = certified_yes(inst, *evaluate(scan.index), "linf-voters");
  v.scenarios_total = verdict.scenarios_total;
  v.scenarios_solved = verdict.scenarios_solved;
  v.points_examined = verdict.points_examined;
  return v;
}

}  // namespace vpm
