#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vpm/instance.hpp"

namespace vpm {

// Rank the target takes among n candidates given its ranking-domain
// distance to a voter and the rivals' sorted distances. Ties arising from
// manipulation break in the adversary's favor: constructive puts the target
// ahead of equally distant rivals, destructive behind them.
int rank_target(double target_dist, const std::vector<double>& rivals_sorted,
                Objective objective, bool exact);

struct TallyReport {
  std::vector<double> scores;    // per candidate, weighted; index 0 = target
  std::vector<int> target_ranks; // per voter row
  bool target_wins = false;      // score >= every rival (ties go to target)
  bool target_loses = false;     // some rival score >= target
  int winner = 0;                // candidate index for display
  bool rival_distance_tie = false;  // equal rival-rival distances seen
  bool rival_score_tie = false;     // top rival score shared by >= 2 rivals

  bool success(Objective o) const {
    return o == Objective::constructive ? target_wins : target_loses;
  }
};

// Precomputed rival rankings for repeated tallies over one instance.
// Distances live in the "ranking domain": exact integer p-th powers on
// binary instances, plain distances (with the kTol tie band) on real ones.
class ElectionContext {
 public:
  explicit ElectionContext(const Instance& inst);

  const Instance& instance() const { return *inst_; }
  bool exact() const { return exact_; }
  double ranking_dist(std::span<const double> x, std::span<const double> y) const;
  const std::vector<double>& rival_sorted(int voter) const { return rival_sorted_[voter]; }

  TallyReport tally(const Vec& perceived) const;
  // Decision only, no report; allocation-free so scan loops stay parallel.
  bool success(const Vec& perceived, Objective objective) const;

 private:
  const Instance* inst_;
  bool exact_;
  std::vector<std::vector<double>> rival_sorted_;  // per voter row, ascending
  std::vector<std::vector<int>> rival_order_;      // candidate indices, same order
  bool rival_distance_tie_ = false;
};

// Convenience one-shot tally.
TallyReport tally_and_decide(const Instance& inst, const Vec& perceived);

// Distances d_j^t to the t-th relevant rival, true-distance units.
//   constructive: d^t = t-th closest rival for t < n, d^n = +inf;
//   destructive:  d^1 = 0, d^t = (t-1)-th closest rival for t >= 2.
struct RankThresholds {
  double original = 0;          // d_j^0, target to voter
  std::vector<double> by_rank;  // index t-1 holds d_j^t, t = 1..n
};

RankThresholds rank_thresholds(const Instance& inst, int voter_row,
                               const ScorePartition& partition);

// Witness certification: recomputes budget and outcome from the instance
// alone, sharing no solver state.
struct Certification {
  bool budget_ok = false;
  double measured_distance = 0;
  double budget_slack = 0;
  bool outcome_ok = false;
  TallyReport tally;
  std::string failure;  // "budget violation" / "outcome mismatch" / both

  bool pass() const { return budget_ok && outcome_ok; }
};

Certification verify_witness(const Instance& inst, const Vec& witness);

struct Verdict {
  bool yes = false;
  Vec witness;                    // set on YES
  std::vector<double> scores;     // achieved score vector on YES
  std::vector<int> target_ranks;  // per voter row on YES
  double budget_slack = 0;
  long long scenarios_total = 0;   // size of the enumerated scenario space
  long long scenarios_solved = 0;  // feasibility subproblems attempted
  long long points_examined = 0;   // representative points tallied
  std::string solver;
};

// Mixed-radix enumeration of (t_1..t_G) over partition breakpoints, one
// digit per opinion group. Constructive walks high-score scenarios first,
// destructive low-score first, so the first hit carries maximal
// manipulation effect.
struct ScenarioSpace {
  int groups = 0;
  std::vector<int> breakpoints;
  bool reversed = false;
  long long total = 1;  // breakpoints.size() ^ groups, clamped

  ScenarioSpace(int groups, const ScorePartition& partition);
  std::vector<int> ranks(long long index) const;
};

}  // namespace vpm
