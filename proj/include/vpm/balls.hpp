#pragma once

#include <optional>

#include "vpm/election.hpp"
#include "vpm/parallel.hpp"

namespace vpm {

struct Ball {
  Vec center;
  double radius = 0;
};

// Intersection of the boundary spheres of one subset F, reduced through
// radical hyperplanes to one sphere meeting an affine subspace.
struct SphereSystem {
  std::vector<Ball> spheres;   // deduplicated members of F
  int subspace_dim = 0;        // dimension of the radical-hyperplane solution set
  double solve_residual = 0;   // least-squares residual of the linear stage
  bool consistent = true;      // false: radical system infeasible (e.g. concentric)
  std::vector<Vec> points;     // emitted representatives (0, 1 or 2)
};

SphereSystem reduce_sphere_subset(const std::vector<Ball>& spheres);

// Representatives of one boundary subset: the canonical point of a
// positive-dimensional intersection (reduced center plus radius along the
// first basis vector), both points of a zero-dimensional one, nothing when
// empty. Coincident spheres deduplicate; tangency yields the touch point.
std::vector<Vec> sphere_subset_representatives(const std::vector<Ball>& spheres);

inline constexpr long long kDefaultSubsetCap = 200000;

// Union of subset representatives over all boundary subsets of size
// <= min(d, #balls), deduplicated within tolerance.
std::vector<Vec> representative_points(const std::vector<Ball>& balls,
                                       long long subset_cap = kDefaultSubsetCap);

// Sphere-arrangement solvers for the Euclidean norm: one global
// representative set over every breakpoint's balls (constant issues), or
// per-scenario ball families (constant voters).
Verdict solve_l2_constant_issues(const Instance& inst, const SolveOptions& opt = {});
Verdict solve_l2_constant_voters(const Instance& inst, const SolveOptions& opt = {});

// Subset count the constant-issues solver would enumerate.
long long l2_subset_count(const Instance& inst);

}  // namespace vpm
