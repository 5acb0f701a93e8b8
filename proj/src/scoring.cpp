#include "vpm/scoring.hpp"

#include <numeric>
#include <stdexcept>

namespace vpm {

std::string to_string(Objective o) {
  return o == Objective::constructive ? "constructive" : "destructive";
}

ScoringRule::ScoringRule(std::string name, std::vector<double> values, int k)
    : name_(std::move(name)), values_(std::move(values)), k_(k) {
  if (values_.empty()) throw std::invalid_argument("scoring rule needs at least one rank");
  for (size_t t = 1; t < values_.size(); ++t)
    if (values_[t] > values_[t - 1])
      throw std::invalid_argument("scoring rule must be non-increasing in rank");
}

ScoringRule ScoringRule::plurality(int n) {
  std::vector<double> v(n, 0.0);
  v[0] = 1.0;
  return ScoringRule("plurality", std::move(v));
}

ScoringRule ScoringRule::veto(int n) {
  std::vector<double> v(n, 1.0);
  v[n - 1] = 0.0;
  return ScoringRule("veto", std::move(v));
}

ScoringRule ScoringRule::borda(int n) {
  std::vector<double> v(n);
  for (int t = 1; t <= n; ++t) v[t - 1] = n - t;
  return ScoringRule("borda", std::move(v));
}

ScoringRule ScoringRule::k_approval(int n, int k) {
  if (k < 1 || k > n) throw std::invalid_argument("k_approval needs 1 <= k <= n");
  std::vector<double> v(n, 0.0);
  for (int t = 1; t <= k; ++t) v[t - 1] = 1.0;
  return ScoringRule("k_approval", std::move(v), k);
}

ScoringRule ScoringRule::table(std::vector<double> values) {
  return ScoringRule("table", std::move(values));
}

double ScoringRule::total() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

ScorePartition score_partition(const ScoringRule& f, Objective objective) {
  const int n = f.n();
  ScorePartition part;
  part.objective = objective;
  if (objective == Objective::constructive) {
    // s_i = last rank of each equal-value block, so s_r = n.
    for (int t = 1; t <= n; ++t)
      if (t == n || f(t + 1) != f(t)) part.breakpoints.push_back(t);
  } else {
    // s_i = first rank of each equal-value block, so s_1 = 1.
    for (int t = 1; t <= n; ++t)
      if (t == 1 || f(t) != f(t - 1)) part.breakpoints.push_back(t);
  }
  return part;
}

}  // namespace vpm
