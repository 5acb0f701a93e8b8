#pragma once

#include <cstdint>
#include <optional>

#include "vpm/election.hpp"
#include "vpm/parallel.hpp"

namespace vpm {

// Issues are interchangeable when every voter group holds the same value on
// them. Positions here are relabeled so the target is all-ones; sign[g] is
// +1 when group g holds 1 on the class (flipping the target away from 1
// increases that group's distance), -1 otherwise.
struct EquivalenceClass {
  std::vector<int> issues;  // ascending member indices
  std::vector<int8_t> sign;  // per group

  long long size() const { return static_cast<long long>(issues.size()); }
};

std::vector<EquivalenceClass> issue_equivalence_classes(
    const std::vector<Vec>& relabeled_groups, int dimension);

// XOR mask turning `target` into all-ones; apply_mask is an involution.
Vec relabel_mask(const Vec& target);
Vec apply_mask(const Vec& pos, const Vec& mask);

struct FlipPlan {
  std::vector<long long> per_class;

  long long total() const;
};

inline constexpr long long kVacuous = INT64_MAX;

// Integer feasibility core. rhs[g] = (d_g^{t_g})^p - (d_g^0)^p, or kVacuous
// when no constraint applies; constructive needs sum_i sign_i x_i <= rhs,
// destructive >=. All arithmetic is exact over integers. Returns the
// lexicographically smallest feasible plan.
std::optional<FlipPlan> scenario_feasibility(const std::vector<EquivalenceClass>& classes,
                                             const std::vector<long long>& rhs,
                                             long long budget, Objective objective);

// Flips exactly per_class[i] issues in each class, lowest indices first.
// `target` must be all-ones in the relabeled space.
Vec apply_flips(const Vec& target, const std::vector<EquivalenceClass>& classes,
                const FlipPlan& plan);

Verdict solve_bvpm(const Instance& inst, const SolveOptions& opt = {});

// A binary point distinct from every listed position, if one exists.
std::optional<Vec> binary_point_outside(const std::vector<Vec>& positions, int dimension);

}  // namespace vpm
