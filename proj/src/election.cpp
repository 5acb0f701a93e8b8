#include "vpm/election.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace vpm {

namespace {

bool dist_lt(double a, double b, bool exact) { return exact ? a < b : approx_lt(a, b); }
bool dist_le(double a, double b, bool exact) { return exact ? a <= b : approx_le(a, b); }

}  // namespace

int rank_target(double target_dist, const std::vector<double>& rivals_sorted,
                Objective objective, bool exact) {
  int ahead = 0;
  for (double d : rivals_sorted) {
    const bool rival_ahead = objective == Objective::constructive
                                 ? dist_lt(d, target_dist, exact)
                                 : dist_le(d, target_dist, exact);
    if (rival_ahead)
      ++ahead;
    else
      break;  // sorted ascending, no later rival can be ahead
  }
  return 1 + ahead;
}

ElectionContext::ElectionContext(const Instance& inst) : inst_(&inst) {
  exact_ = inst.issue_space == IssueSpace::binary;
  const int n = inst.num_candidates();
  rival_sorted_.resize(inst.num_voter_rows());
  rival_order_.resize(inst.num_voter_rows());
  for (int j = 0; j < inst.num_voter_rows(); ++j) {
    std::vector<std::pair<double, int>> rivals;
    rivals.reserve(n - 1);
    for (int i = 1; i < n; ++i)
      rivals.emplace_back(ranking_dist(inst.candidates[i], inst.voters[j]), i);
    // Rival-rival ties are broken by candidate index; flagged, since actual
    // preferences are assumed tie-free.
    std::sort(rivals.begin(), rivals.end());
    for (size_t k = 0; k + 1 < rivals.size(); ++k)
      if (exact_ ? rivals[k].first == rivals[k + 1].first
                 : approx_eq(rivals[k].first, rivals[k + 1].first))
        rival_distance_tie_ = true;
    rival_sorted_[j].reserve(rivals.size());
    rival_order_[j].reserve(rivals.size());
    for (auto& [d, i] : rivals) {
      rival_sorted_[j].push_back(d);
      rival_order_[j].push_back(i);
    }
  }
}

double ElectionContext::ranking_dist(std::span<const double> x, std::span<const double> y) const {
  if (exact_) {
    const long long h = hamming(x, y);
    return inst_->norm.is_inf() ? (h > 0 ? 1.0 : 0.0) : static_cast<double>(h);
  }
  return distance(x, y, inst_->norm);
}

TallyReport ElectionContext::tally(const Vec& perceived) const {
  const Instance& inst = *inst_;
  const int n = inst.num_candidates();
  TallyReport rep;
  rep.scores.assign(n, 0.0);
  rep.target_ranks.resize(inst.num_voter_rows());
  rep.rival_distance_tie = rival_distance_tie_;

  for (int j = 0; j < inst.num_voter_rows(); ++j) {
    const double w = static_cast<double>(inst.voter_weight(j));
    const double td = ranking_dist(perceived, inst.voters[j]);
    const int rt = rank_target(td, rival_sorted_[j], inst.objective, exact_);
    rep.target_ranks[j] = rt;
    rep.scores[0] += w * inst.scoring(rt);
    for (size_t k = 0; k < rival_order_[j].size(); ++k) {
      const int rank = static_cast<int>(k) + 1 + (static_cast<int>(k) + 1 >= rt ? 1 : 0);
      rep.scores[rival_order_[j][k]] += w * inst.scoring(rank);
    }
  }

  double best_rival = rep.scores[1];
  int best_rival_idx = 1;
  for (int i = 2; i < n; ++i) {
    if (rep.scores[i] > best_rival) {
      best_rival = rep.scores[i];
      best_rival_idx = i;
    }
  }
  int at_top = 0;
  for (int i = 1; i < n; ++i) at_top += approx_eq(rep.scores[i], best_rival);
  rep.rival_score_tie = at_top > 1;
  rep.target_wins = approx_ge(rep.scores[0], best_rival);
  rep.target_loses = approx_ge(best_rival, rep.scores[0]);
  if (inst.objective == Objective::constructive)
    rep.winner = rep.target_wins ? 0 : best_rival_idx;
  else
    rep.winner = rep.target_loses ? best_rival_idx : 0;
  return rep;
}

bool ElectionContext::success(const Vec& perceived, Objective objective) const {
  const Instance& inst = *inst_;
  const int n = inst.num_candidates();
  static thread_local std::vector<double> scores;
  scores.assign(n, 0.0);
  for (int j = 0; j < inst.num_voter_rows(); ++j) {
    const double w = static_cast<double>(inst.voter_weight(j));
    const double td = ranking_dist(perceived, inst.voters[j]);
    const int rt = rank_target(td, rival_sorted_[j], objective, exact_);
    scores[0] += w * inst.scoring(rt);
    for (size_t k = 0; k < rival_order_[j].size(); ++k) {
      const int rank = static_cast<int>(k) + 1 + (static_cast<int>(k) + 1 >= rt ? 1 : 0);
      scores[rival_order_[j][k]] += w * inst.scoring(rank);
    }
  }
  double best_rival = scores[1];
  for (int i = 2; i < n; ++i) best_rival = std::max(best_rival, scores[i]);
  return objective == Objective::constructive ? approx_ge(scores[0], best_rival)
                                              : approx_ge(best_rival, scores[0]);
}

TallyReport tally_and_decide(const Instance& inst, const Vec& perceived) {
  return ElectionContext(inst).tally(perceived);
}

RankThresholds rank_thresholds(const Instance& inst, int voter_row,
                               const ScorePartition& partition) {
  const int n = inst.num_candidates();
  // Rank rivals in the ranking domain (same order as true distance), then
  // report thresholds in true-distance units.
  std::vector<std::pair<double, int>> order;
  order.reserve(n - 1);
  for (int i = 1; i < n; ++i) {
    double d;
    if (inst.issue_space == IssueSpace::binary) {
      const long long h = hamming(inst.candidates[i], inst.voters[voter_row]);
      d = inst.norm.is_inf() ? (h > 0 ? 1.0 : 0.0) : static_cast<double>(h);
    } else {
      d = distance(inst.candidates[i], inst.voters[voter_row], inst.norm);
    }
    order.emplace_back(d, i);
  }
  std::sort(order.begin(), order.end());
  std::vector<double> rival_true(order.size());
  for (size_t k = 0; k < order.size(); ++k)
    rival_true[k] =
        distance(inst.candidates[order[k].second], inst.voters[voter_row], inst.norm);

  RankThresholds thr;
  thr.original = distance(inst.target(), inst.voters[voter_row], inst.norm);
  thr.by_rank.resize(n);
  if (partition.objective == Objective::constructive) {
    for (int t = 1; t <= n; ++t)
      thr.by_rank[t - 1] =
          t <= n - 1 ? rival_true[t - 1] : std::numeric_limits<double>::infinity();
  } else {
    thr.by_rank[0] = 0.0;
    for (int t = 2; t <= n; ++t) thr.by_rank[t - 1] = rival_true[t - 2];
  }
  return thr;
}

Certification verify_witness(const Instance& inst, const Vec& witness) {
  if (static_cast<int>(witness.size()) != inst.dimension)
    throw std::invalid_argument("witness has wrong dimension");

  Certification cert;
  if (inst.issue_space == IssueSpace::binary) {
    for (double x : witness)
      if (x != 0.0 && x != 1.0) throw std::invalid_argument("witness must be binary");
    const long long flips = hamming(witness, inst.target());
    const long long budget = binary_flip_budget(inst.epsilon, inst.norm, inst.dimension);
    cert.measured_distance = inst.norm.is_inf()
                                 ? (flips > 0 ? 1.0 : 0.0)
                                 : std::pow(static_cast<double>(flips), 1.0 / inst.norm.p);
    cert.budget_ok = flips <= budget;
    cert.budget_slack = static_cast<double>(budget - flips);
  } else {
    cert.measured_distance = distance(witness, inst.target(), inst.norm);
    cert.budget_ok = approx_le(cert.measured_distance, inst.epsilon);
    cert.budget_slack = inst.epsilon - cert.measured_distance;
  }

  cert.tally = tally_and_decide(inst, witness);
  cert.outcome_ok = cert.tally.success(inst.objective);
  if (!cert.budget_ok) cert.failure = "budget violation";
  if (!cert.outcome_ok) {
    if (!cert.failure.empty()) cert.failure += "; ";
    cert.failure += "outcome mismatch";
  }
  return cert;
}

ScenarioSpace::ScenarioSpace(int groups_, const ScorePartition& partition)
    : groups(groups_),
      breakpoints(partition.breakpoints),
      reversed(partition.objective == Objective::destructive) {
  const long long r = static_cast<long long>(breakpoints.size());
  total = 1;
  for (int g = 0; g < groups; ++g) {
    if (total > std::numeric_limits<long long>::max() / r) {
      total = std::numeric_limits<long long>::max();
      break;
    }
    total *= r;
  }
}

std::vector<int> ScenarioSpace::ranks(long long index) const {
  const long long r = static_cast<long long>(breakpoints.size());
  std::vector<int> t(groups);
  for (int g = groups - 1; g >= 0; --g) {
    const long long digit = index % r;
    index /= r;
    t[g] = reversed ? breakpoints[r - 1 - digit] : breakpoints[digit];
  }
  return t;
}

}  // namespace vpm
