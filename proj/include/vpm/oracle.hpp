#pragma once

#include <cstdint>
#include <optional>

#include "vpm/boxes.hpp"
#include "vpm/reductions.hpp"

namespace vpm {

// Ground-truth engines. They re-derive search spaces from first principles
// and share nothing with the solvers beyond election-core primitives.
struct OracleReport {
  bool yes = false;
  Vec witness;                       // set on yes
  std::vector<int> issue_subset;     // set by the subset-selection oracle
  long long points_examined = 0;
  bool exhaustive = false;           // true only for complete finite searches
  long long best_target_votes = -1;  // max weighted first-rank votes seen
};

// All binary positions within the flip budget, ascending mask order.
OracleReport brute_force_bvpm(const Instance& inst);

// Full cross product of per-dimension endpoints (every box face, the budget
// faces and the original coordinates), exhaustive for Chebyshev decisions.
// Two-candidate constructive instances whose grid outgrows the cap switch
// to an exact branch-and-bound over interval faces instead.
OracleReport endpoint_oracle_linf(const Instance& inst);

// Uniform sampling inside the budget ball/cube; can certify YES, never NO.
OracleReport sampling_oracle(const Instance& inst, long long samples, uint64_t seed,
                             bool parallel = true);

OracleReport bisc_brute_force(const BiscInstance& b);

std::optional<std::vector<bool>> sat_brute_force(const SatFormula& f);

// Direct cross-product realization of the cube-avoidance feasibility
// problem; exhaustive over the representative set.
std::optional<Vec> naive_feasibility(const Vec& y, double eps, const std::vector<Box>& cubes,
                                     long long cross_product_cap = 1000000);

}  // namespace vpm
