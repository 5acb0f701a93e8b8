#pragma once

#include <cstdint>

#include "vpm/instance.hpp"
#include "vpm/reductions.hpp"

namespace vpm {

struct RandomInstanceSpec {
  IssueSpace issue_space = IssueSpace::binary;
  int dimension = 4;
  int candidates = 2;
  long long voters = 3;
  int groups = 0;  // 0 = fully diverse (every voter drawn independently)
  NormSpec norm = NormSpec::lp(1);
  std::string scoring = "plurality";  // plurality|veto|borda|k_approval
  int approval_k = 1;
  Objective objective = Objective::constructive;
  double epsilon = 1;
  double coord_range = 1;  // real coordinates drawn from [-range, range]
};

// Deterministic under a fixed seed. With groups > 0 the electorate uses
// exactly that many distinct positions, emitted as weighted rows.
Instance random_instance(const RandomInstanceSpec& spec, uint64_t seed);

BiscInstance random_bisc(int dimension, int voters, uint64_t seed);

SatFormula random_3sat(int num_vars, int num_clauses, uint64_t seed);

}  // namespace vpm
