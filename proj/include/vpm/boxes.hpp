#pragma once

#include <optional>

#include "vpm/election.hpp"
#include "vpm/parallel.hpp"

namespace vpm {

// Axis-aligned Chebyshev ball. Openness is decided by the operation using
// it: containment tests treat boxes as closed, avoidance tests treat them
// as open so that face contact counts as outside.
struct Box {
  Vec center;
  double radius = 0;
};

// Per-dimension candidate coordinates for representative points: every box
// face clipped to the budget interval, or {y_j} when none survives.
struct DimensionEndpoints {
  std::vector<std::vector<double>> coords;  // sorted unique per dimension
  long long total = 1;                      // product of sizes, clamped

  Vec point(long long index) const;  // mixed-radix decode
  void point_into(long long index, Vec& out) const;
};

DimensionEndpoints endpoint_grid(const std::vector<Box>& boxes, const Vec& y, double eps);

// Indices of the cubes a coordinate escapes on dimension j: the avoidance
// constraint |coord - a_{i,j}| >= b_i holds, face contact included.
std::vector<int> avoid_cover_set(double coord, int dim, const std::vector<Box>& cubes);

// Closed-form optimum for two candidates under the Chebyshev norm,
// constructive control: per issue, move the target toward the rival by at
// most eps. The resulting point wins the maximum achievable voter count.
Verdict two_candidate_constructive(const Instance& inst, const SolveOptions& opt = {});

// Intersection of the budget cube with the scenario's closed voter boxes;
// witness is the per-dimension interval midpoint. Infinite radii impose
// nothing and are skipped.
std::optional<Vec> box_scenario_constructive(const Vec& center, double eps,
                                             const std::vector<Box>& voter_boxes);

// Representative-grid solver over all breakpoints' boxes, both objectives.
Verdict solve_linf_constant_issues(const Instance& inst, const SolveOptions& opt = {});

// Grid size the constant-issues solver would enumerate (dispatch uses it).
long long linf_grid_size(const Instance& inst);

// Find y~ with ||y~ - y||_inf <= eps and ||y~ - a_i||_inf >= b_i for every
// cube, or nullopt. Linear in the dimension for a constant cube count;
// face contact satisfies the avoidance constraint.
std::optional<Vec> feasibility_constant_constraints(const Vec& y, double eps,
                                                    const std::vector<Box>& cubes);

// Scenario enumeration with per-scenario box intersection (constructive) or
// cube-avoidance feasibility (destructive) over opinion groups.
Verdict solve_linf_constant_voters(const Instance& inst, const SolveOptions& opt = {});

}  // namespace vpm
