#include "vpm/instance.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace vpm {

std::string to_string(IssueSpace s) { return s == IssueSpace::binary ? "binary" : "real"; }

long long Instance::total_voters() const {
  long long total = 0;
  for (int i = 0; i < num_voter_rows(); ++i) total += voter_weight(i);
  return total;
}

std::vector<std::string> Instance::validate() const {
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  if (num_candidates() < 2) throw std::invalid_argument("need at least 2 candidates");
  if (num_voter_rows() < 1) throw std::invalid_argument("need at least 1 voter");
  if (epsilon < 0) throw std::invalid_argument("budget epsilon must be nonnegative");
  if (scoring.n() != num_candidates())
    throw std::invalid_argument("scoring rule covers " + std::to_string(scoring.n()) +
                                " ranks but there are " + std::to_string(num_candidates()) +
                                " candidates");
  if (!weights.empty() && weights.size() != voters.size())
    throw std::invalid_argument("weights and voters differ in length");
  for (long long w : weights)
    if (w < 1) throw std::invalid_argument("voter weights must be positive");

  auto check_vec = [&](const Vec& v, const std::string& what) {
    if (static_cast<int>(v.size()) != dimension)
      throw std::invalid_argument(what + ": length " + std::to_string(v.size()) +
                                  " != dimension " + std::to_string(dimension));
    if (issue_space == IssueSpace::binary)
      for (double x : v)
        if (x != 0.0 && x != 1.0)
          throw std::invalid_argument(what + ": binary coordinates must be 0 or 1");
  };
  for (size_t i = 0; i < candidates.size(); ++i)
    check_vec(candidates[i], "candidates[" + std::to_string(i) + "]");
  for (size_t i = 0; i < voters.size(); ++i)
    check_vec(voters[i], "voters[" + std::to_string(i) + "]");

  std::vector<std::string> warnings;
  for (size_t i = 0; i < candidates.size(); ++i)
    for (size_t j = i + 1; j < candidates.size(); ++j)
      if (candidates[i] == candidates[j])
        warnings.push_back("candidates " + std::to_string(i) + " and " + std::to_string(j) +
                           " coincide");
  return warnings;
}

std::vector<OpinionGroup> group_opinions(const std::vector<Vec>& voters) {
  std::vector<OpinionGroup> groups;
  std::map<Vec, size_t> seen;
  for (const Vec& v : voters) {
    auto [it, inserted] = seen.emplace(v, groups.size());
    if (inserted)
      groups.push_back({v, 1});
    else
      groups[it->second].weight += 1;
  }
  return groups;
}

std::vector<OpinionGroup> group_opinions(const Instance& inst) {
  std::vector<OpinionGroup> groups;
  std::map<Vec, size_t> seen;
  for (int i = 0; i < inst.num_voter_rows(); ++i) {
    auto [it, inserted] = seen.emplace(inst.voters[i], groups.size());
    if (inserted)
      groups.push_back({inst.voters[i], inst.voter_weight(i)});
    else
      groups[it->second].weight += inst.voter_weight(i);
  }
  return groups;
}

Instance collapse_to_groups(const Instance& inst) {
  Instance grouped = inst;
  grouped.voters.clear();
  grouped.weights.clear();
  for (const OpinionGroup& g : group_opinions(inst)) {
    grouped.voters.push_back(g.position);
    grouped.weights.push_back(g.weight);
  }
  return grouped;
}

long long binary_flip_budget(double epsilon, NormSpec norm, int dimension) {
  if (norm.is_inf()) return epsilon >= 1.0 ? dimension : 0;
  // A hair of slack so budgets meant to be integral (eps = k^{1/p}) survive
  // the round trip through pow.
  const double raw = std::pow(epsilon, norm.p);
  const long long budget = static_cast<long long>(std::floor(raw + 1e-9));
  return std::min<long long>(std::max<long long>(budget, 0), dimension);
}

}  // namespace vpm
