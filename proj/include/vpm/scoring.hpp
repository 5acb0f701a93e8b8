#pragma once

#include <string>
#include <vector>

namespace vpm {

enum class Objective { constructive, destructive };

std::string to_string(Objective o);

// Positional scoring rule: f(1..n), non-increasing. Rank 1 is the closest
// candidate.
class ScoringRule {
 public:
  ScoringRule(std::string name, std::vector<double> values, int k = 0);

  static ScoringRule plurality(int n);
  static ScoringRule veto(int n);
  static ScoringRule borda(int n);
  static ScoringRule k_approval(int n, int k);
  static ScoringRule table(std::vector<double> values);

  int n() const { return static_cast<int>(values_.size()); }
  double operator()(int rank) const { return values_[rank - 1]; }
  const std::vector<double>& values() const { return values_; }
  const std::string& name() const { return name_; }
  int approval_k() const { return k_; }
  double total() const;  // sum f(1..n), the per-voter score mass
  bool operator==(const ScoringRule&) const = default;

 private:
  std::string name_;
  std::vector<double> values_;
  int k_ = 0;  // only meaningful for k_approval
};

// Ranks delimiting the equal-value blocks of f. The stored breakpoints
// s_1 < ... < s_r are the scenario rank values:
//   constructive: s_i is the last rank of block i, so s_r = n;
//   destructive:  s_i is the first rank of block i, so s_1 = 1.
// r equals the number of distinct values of f.
struct ScorePartition {
  Objective objective = Objective::constructive;
  std::vector<int> breakpoints;

  int unique_count() const { return static_cast<int>(breakpoints.size()); }
};

ScorePartition score_partition(const ScoringRule& f, Objective objective);

}  // namespace vpm
