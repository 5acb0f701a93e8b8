#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vpm/instance.hpp"

namespace vpm {

// Sweep over electorate size, opinion-group count and budget, measuring how
// manipulability scales with opinion diversity.
struct ExperimentConfig {
  IssueSpace issue_space = IssueSpace::binary;
  int dimension = 8;
  int candidates = 2;
  NormSpec norm = NormSpec::lp(1);
  std::string scoring = "plurality";
  int approval_k = 1;
  Objective objective = Objective::constructive;
  std::vector<long long> voter_counts{1000};
  std::vector<int> group_counts{3};
  std::vector<double> epsilons{1};
  int trials = 20;
  uint64_t seed = 1;
  bool parallel = true;
};

struct ExperimentCell {
  long long m = 0;
  int q = 0;
  double epsilon = 0;
  int trials = 0;
  double yes_rate = 0;
  double mean_ms = 0;
  long long scenarios = 0;
  bool skipped = false;  // outside the tractability caps
};

std::vector<ExperimentCell> run_diversity_experiment(const ExperimentConfig& config);

// CSV with header
// issue_space,norm,objective,m,q,epsilon,trials,yes_rate,mean_ms,scenarios.
// Skipped cells carry trials=0 and nan metrics.
std::string experiment_csv(const ExperimentConfig& config,
                           const std::vector<ExperimentCell>& cells);

}  // namespace vpm
