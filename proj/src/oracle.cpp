#include "vpm/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

#include "vpm/errors.hpp"

namespace vpm {

namespace {

constexpr long long kCrossProductCap = 1000000;

long long weighted_first_rank_votes(const ElectionContext& ctx, const Instance& inst,
                                    const Vec& point) {
  long long votes = 0;
  for (int j = 0; j < inst.num_voter_rows(); ++j) {
    const double td = ctx.ranking_dist(point, inst.voters[j]);
    if (rank_target(td, ctx.rival_sorted(j), Objective::constructive, ctx.exact()) == 1)
      votes += inst.voter_weight(j);
  }
  return votes;
}

}  // namespace

OracleReport brute_force_bvpm(const Instance& inst) {
  if (inst.issue_space != IssueSpace::binary)
    throw std::invalid_argument("brute_force_bvpm requires a binary instance");
  if (inst.dimension > 20)
    throw RefusalError("brute-force enumeration over 2^" + std::to_string(inst.dimension) +
                       " positions is out of reach");
  inst.validate();

  const long long budget = binary_flip_budget(inst.epsilon, inst.norm, inst.dimension);
  const ElectionContext ctx(inst);
  OracleReport rep;
  rep.exhaustive = true;

  for (uint64_t bits = 0; bits < (1ULL << inst.dimension); ++bits) {
    if (std::popcount(bits) > budget) continue;
    Vec point = inst.target();
    for (int k = 0; k < inst.dimension; ++k)
      if (bits & (1ULL << k)) point[k] = 1.0 - point[k];
    ++rep.points_examined;
    rep.best_target_votes =
        std::max(rep.best_target_votes, weighted_first_rank_votes(ctx, inst, point));
    if (!rep.yes && ctx.tally(point).success(inst.objective)) {
      rep.yes = true;
      rep.witness = std::move(point);
    }
  }
  return rep;
}

namespace {

// Exact maximum weighted voter coverage over the budget cube for
// two-candidate constructive Chebyshev elections. Per dimension the optimum
// can slide down to an interval's lower face or the budget's lower face, so
// a depth-first scan over those coordinates is exhaustive; the incumbent
// bound prunes branches that cannot strictly improve.
OracleReport max_coverage_2cand_linf(const Instance& inst) {
  const int d = inst.dimension;
  const int m = inst.num_voter_rows();
  if (m > 62)
    throw RefusalError("coverage search supports at most 62 voter rows, got " +
                       std::to_string(m));
  const Vec& y = inst.target();
  const double eps = inst.epsilon;

  std::vector<double> radius(m);
  std::vector<long long> weight(m);
  for (int j = 0; j < m; ++j) {
    radius[j] = distance(inst.candidates[1], inst.voters[j], inst.norm);
    weight[j] = inst.voter_weight(j);
  }

  // cand[k]: candidate coordinates; member[k][x]: voters whose clipped
  // interval contains that coordinate. Membership uses the same
  // adversary-favorable tie band as the election tally, so points sitting
  // exactly on a face count as won.
  std::vector<std::vector<double>> cand(d);
  std::vector<std::vector<uint64_t>> member(d);
  for (int k = 0; k < d; ++k) {
    cand[k].push_back(y[k] - eps);
    for (int j = 0; j < m; ++j) {
      const double lo = inst.voters[j][k] - radius[j];
      if (approx_le(y[k] - eps, lo) && approx_le(lo, y[k] + eps))
        cand[k].push_back(std::clamp(lo, y[k] - eps, y[k] + eps));
    }
    std::sort(cand[k].begin(), cand[k].end());
    cand[k].erase(std::unique(cand[k].begin(), cand[k].end()), cand[k].end());
    member[k].assign(cand[k].size(), 0);
    for (size_t x = 0; x < cand[k].size(); ++x)
      for (int j = 0; j < m; ++j)
        if (approx_le(std::fabs(cand[k][x] - inst.voters[j][k]), radius[j]))
          member[k][x] |= 1ULL << j;
  }

  auto mask_weight = [&](uint64_t mask) {
    long long w = 0;
    while (mask) {
      w += weight[std::countr_zero(mask)];
      mask &= mask - 1;
    }
    return w;
  };

  long long best = -1;
  Vec best_point(d), path(d);
  long long nodes = 0;
  constexpr long long kNodeCap = 80000000;

  auto dfs = [&](auto&& self, int k, uint64_t alive) -> void {
    if (++nodes > kNodeCap)
      throw RefusalError("coverage search exceeded the node budget");
    const long long reachable = mask_weight(alive);
    if (reachable <= best && k > 0) return;
    if (k == d) {
      if (reachable > best) {
        best = reachable;
        best_point = path;
      }
      return;
    }
    // densest branch first so the incumbent tightens early
    std::vector<std::pair<long long, size_t>> order;
    order.reserve(cand[k].size());
    for (size_t x = 0; x < cand[k].size(); ++x)
      order.emplace_back(mask_weight(alive & member[k][x]), x);
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    for (const auto& [w, x] : order) {
      if (w <= best) continue;
      path[k] = cand[k][x];
      self(self, k + 1, alive & member[k][x]);
    }
  };
  const uint64_t all = m == 62 ? (1ULL << 62) - 1 : (1ULL << m) - 1;
  dfs(dfs, 0, all);

  OracleReport rep;
  rep.exhaustive = true;
  rep.points_examined = nodes;
  rep.best_target_votes = best;
  // two candidates: winning the election means winning at least half the
  // (weighted) electorate, ties included
  const long long total = inst.total_voters();
  const bool flat = inst.scoring(1) == inst.scoring(2);
  if (flat || 2 * best >= total) {
    rep.yes = true;
    rep.witness = best_point;
  }
  return rep;
}

}  // namespace

OracleReport endpoint_oracle_linf(const Instance& inst) {
  if (inst.issue_space != IssueSpace::real || !inst.norm.is_inf())
    throw std::invalid_argument("endpoint_oracle_linf requires real issues and the Chebyshev norm");
  inst.validate();

  const ElectionContext ctx(inst);
  const int d = inst.dimension;
  const Vec& y = inst.target();
  const double eps = inst.epsilon;

  // Endpoint sets from first principles: every rival-distance face of every
  // voter, the budget faces and the original coordinates, clipped to the
  // budget interval.
  std::vector<std::vector<double>> coords(d);
  long long total = 1;
  for (int j = 0; j < d; ++j) {
    std::vector<double>& pj = coords[j];
    pj.push_back(y[j]);
    pj.push_back(y[j] - eps);
    pj.push_back(y[j] + eps);
    for (int v = 0; v < inst.num_voter_rows(); ++v) {
      std::vector<double> radii{0.0};
      for (int i = 1; i < inst.num_candidates(); ++i)
        radii.push_back(distance(inst.candidates[i], inst.voters[v], inst.norm));
      for (double r : radii)
        for (double face : {inst.voters[v][j] - r, inst.voters[v][j] + r})
          if (face >= y[j] - eps && face <= y[j] + eps) pj.push_back(face);
    }
    std::sort(pj.begin(), pj.end());
    pj.erase(std::unique(pj.begin(), pj.end()), pj.end());
    if (total > kCrossProductCap / static_cast<long long>(pj.size()))
      total = kCrossProductCap + 1;
    else
      total *= static_cast<long long>(pj.size());
  }
  if (total > kCrossProductCap) {
    if (inst.num_candidates() == 2 && inst.objective == Objective::constructive)
      return max_coverage_2cand_linf(inst);
    throw RefusalError("endpoint oracle cross product exceeds " +
                       std::to_string(kCrossProductCap) + " points");
  }

  OracleReport rep;
  rep.exhaustive = true;
  rep.points_examined = total;
  Vec point(d);
  for (long long index = 0; index < total; ++index) {
    long long rest = index;
    for (int j = d - 1; j >= 0; --j) {
      const long long r = static_cast<long long>(coords[j].size());
      point[j] = coords[j][rest % r];
      rest /= r;
    }
    rep.best_target_votes =
        std::max(rep.best_target_votes, weighted_first_rank_votes(ctx, inst, point));
    if (!rep.yes && ctx.tally(point).success(inst.objective)) {
      rep.yes = true;
      rep.witness = point;
    }
  }
  return rep;
}

OracleReport sampling_oracle(const Instance& inst, long long samples, uint64_t seed,
                             bool parallel) {
  if (inst.issue_space != IssueSpace::real)
    throw std::invalid_argument("sampling_oracle requires real-valued issues");
  inst.validate();

  const ElectionContext ctx(inst);
  const int d = inst.dimension;
  OracleReport rep;
  rep.exhaustive = false;

  if (inst.epsilon == 0) {
    rep.points_examined = 1;
    Vec point = inst.target();
    rep.best_target_votes = weighted_first_rank_votes(ctx, inst, point);
    if (ctx.success(point, inst.objective)) {
      rep.yes = true;
      rep.witness = std::move(point);
    }
    return rep;
  }

  auto draw = [&](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> uni01(0.0, 1.0);
    Vec point(d);
    if (inst.norm.is_inf()) {
      for (int j = 0; j < d; ++j) point[j] = inst.target()[j] + inst.epsilon * unit(rng);
    } else if (inst.norm.p == 2) {
      double norm_sq = 0;
      for (int j = 0; j < d; ++j) {
        point[j] = gauss(rng);
        norm_sq += point[j] * point[j];
      }
      const double scale =
          inst.epsilon * std::pow(uni01(rng), 1.0 / d) / std::max(1e-300, std::sqrt(norm_sq));
      for (int j = 0; j < d; ++j) point[j] = inst.target()[j] + scale * point[j];
    } else {
      // Rejection from the enclosing cube; fine for the small dimensions
      // sampling is used at.
      while (true) {
        double acc = 0;
        for (int j = 0; j < d; ++j) {
          point[j] = inst.epsilon * unit(rng);
          acc += std::pow(std::fabs(point[j]), inst.norm.p);
        }
        if (acc <= std::pow(inst.epsilon, inst.norm.p)) break;
      }
      for (int j = 0; j < d; ++j) point[j] += inst.target()[j];
    }
    return point;
  };

  // Every sample is drawn from its own index-derived stream, so the report
  // is identical whether or not the scan runs in parallel.
  std::atomic<long long> best_votes{-1};
  std::atomic<long long> hit{samples};
#ifdef _OPENMP
#pragma omp parallel if (parallel)
#endif
  {
    std::mt19937_64 rng;
    long long local_best = -1;
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
    for (long long s = 0; s < samples; ++s) {
      rng.seed(seed + static_cast<uint64_t>(s) * 0x9e3779b97f4a7c15ULL);
      const Vec point = draw(rng);
      local_best = std::max(local_best, weighted_first_rank_votes(ctx, inst, point));
      if (ctx.success(point, inst.objective)) {
        long long cur = hit.load();
        while (s < cur && !hit.compare_exchange_weak(cur, s)) {
        }
      }
    }
    long long cur = best_votes.load();
    while (local_best > cur && !best_votes.compare_exchange_weak(cur, local_best)) {
    }
  }
  rep.points_examined = samples;
  rep.best_target_votes = best_votes.load();
  if (hit.load() < samples) {
    rep.yes = true;
    std::mt19937_64 rng(seed + static_cast<uint64_t>(hit.load()) * 0x9e3779b97f4a7c15ULL);
    rep.witness = draw(rng);
  }
  return rep;
}

OracleReport bisc_brute_force(const BiscInstance& b) {
  if (b.dimension > 20)
    throw RefusalError("issue-subset enumeration over 2^" + std::to_string(b.dimension) +
                       " subsets is out of reach");
  OracleReport rep;
  rep.exhaustive = true;
  const long long m = static_cast<long long>(b.voters.size());
  for (uint64_t bits = 1; bits < (1ULL << b.dimension); ++bits) {
    ++rep.points_examined;
    long long target_votes = 0;
    for (const Vec& v : b.voters) {
      long long dt = 0, dr = 0;
      for (int k = 0; k < b.dimension; ++k) {
        if (!(bits & (1ULL << k))) continue;
        dt += v[k] != b.target[k];
        dr += v[k] != b.rival[k];
      }
      if (dt <= dr) ++target_votes;  // best-case tie-breaking
    }
    rep.best_target_votes = std::max(rep.best_target_votes, target_votes);
    if (!rep.yes && 2 * target_votes >= m) {
      rep.yes = true;
      rep.issue_subset.clear();
      for (int k = 0; k < b.dimension; ++k)
        if (bits & (1ULL << k)) rep.issue_subset.push_back(k + 1);
    }
  }
  return rep;
}

std::optional<std::vector<bool>> sat_brute_force(const SatFormula& f) {
  f.validate();
  if (f.num_vars > 24)
    throw RefusalError("assignment enumeration over 2^" + std::to_string(f.num_vars) +
                       " is out of reach");
  std::vector<bool> assignment(f.num_vars);
  for (uint64_t bits = 0; bits < (1ULL << f.num_vars); ++bits) {
    for (int v = 0; v < f.num_vars; ++v) assignment[v] = bits & (1ULL << v);
    if (f.satisfied(assignment)) return assignment;
  }
  return std::nullopt;
}

std::optional<Vec> naive_feasibility(const Vec& y, double eps, const std::vector<Box>& cubes,
                                     long long cross_product_cap) {
  const int d = static_cast<int>(y.size());
  std::vector<const Box*> active;
  for (const Box& b : cubes)
    if (b.radius > 0) active.push_back(&b);
  if (active.empty()) return y;

  std::vector<std::vector<double>> pj(d);
  long long total = 1;
  for (int j = 0; j < d; ++j) {
    for (const Box* b : active)
      for (double face : {b->center[j] - b->radius, b->center[j] + b->radius})
        if (face >= y[j] - eps && face <= y[j] + eps) pj[j].push_back(face);
    if (pj[j].empty()) pj[j].push_back(y[j]);
    std::sort(pj[j].begin(), pj[j].end());
    pj[j].erase(std::unique(pj[j].begin(), pj[j].end()), pj[j].end());
    total *= static_cast<long long>(pj[j].size());
    if (total > cross_product_cap)
      throw RefusalError("representative cross product exceeds " +
                         std::to_string(cross_product_cap) + " points");
  }

  Vec point(d);
  for (long long index = 0; index < total; ++index) {
    long long rest = index;
    for (int j = d - 1; j >= 0; --j) {
      const long long r = static_cast<long long>(pj[j].size());
      point[j] = pj[j][rest % r];
      rest /= r;
    }
    bool ok = true;
    for (const Box* b : active) {
      double m = 0;
      for (int j = 0; j < d; ++j) m = std::max(m, std::fabs(point[j] - b->center[j]));
      if (m < b->radius) {
        ok = false;
        break;
      }
    }
    if (ok) return point;
  }
  return std::nullopt;
}

}  // namespace vpm
