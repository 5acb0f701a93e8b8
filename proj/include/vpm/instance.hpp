#pragma once

#include <string>
#include <vector>

#include "vpm/geometry.hpp"
#include "vpm/scoring.hpp"

namespace vpm {

enum class IssueSpace { binary, real };

std::string to_string(IssueSpace s);

// One election-control problem. candidates[0] is the target whose perceived
// position may move; voters[i] carries weights[i] identical voters, so a
// polarized electorate collapses to a few weighted rows.
struct Instance {
  IssueSpace issue_space = IssueSpace::real;
  int dimension = 0;
  std::vector<Vec> candidates;
  std::vector<Vec> voters;
  std::vector<long long> weights;  // empty means all 1
  NormSpec norm;
  ScoringRule scoring{"plurality", {1}};
  Objective objective = Objective::constructive;
  double epsilon = 0;

  int num_candidates() const { return static_cast<int>(candidates.size()); }
  int num_voter_rows() const { return static_cast<int>(voters.size()); }
  long long voter_weight(int i) const { return weights.empty() ? 1 : weights[i]; }
  long long total_voters() const;
  const Vec& target() const { return candidates[0]; }

  // Throws std::invalid_argument on hard violations (sizes, binary domain,
  // epsilon < 0); returns soft warnings (coinciding candidates).
  std::vector<std::string> validate() const;
};

struct OpinionGroup {
  Vec position;
  long long weight = 0;
};

// Exact deduplication with counts, first-occurrence order.
std::vector<OpinionGroup> group_opinions(const std::vector<Vec>& voters);
std::vector<OpinionGroup> group_opinions(const Instance& inst);

// Same election with voters collapsed to weighted opinion groups.
Instance collapse_to_groups(const Instance& inst);

// Budget in issue flips for a binary instance: floor(eps^p) for finite p;
// for the Chebyshev norm every flip costs exactly 1, so eps >= 1 frees the
// whole hypercube and eps < 1 pins the target.
long long binary_flip_budget(double epsilon, NormSpec norm, int dimension);

}  // namespace vpm
