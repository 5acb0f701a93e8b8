#include "vpm/dispatch.hpp"

#include <stdexcept>

#include "vpm/balls.hpp"
#include "vpm/boxes.hpp"
#include "vpm/bvpm.hpp"
#include "vpm/errors.hpp"

namespace vpm {

namespace {

constexpr int kBvpmGroupCap = 12;
constexpr long long kLinfGridCap = 1LL << 22;
constexpr int kLinfGroupCap = 6;
constexpr long long kL2SubsetCap = kDefaultSubsetCap;
constexpr int kL2GroupCap = 5;

}  // namespace

DispatchDecision choose_solver(const Instance& inst) {
  const int groups = static_cast<int>(group_opinions(inst).size());

  if (inst.issue_space == IssueSpace::binary) {
    if (inst.norm.is_inf() || groups <= kBvpmGroupCap) return {"bvpm", ""};
    return {"", "refused: " + std::to_string(groups) +
                    " distinct opinions exceed the cap of " + std::to_string(kBvpmGroupCap) +
                    "; binary perception manipulation is NP-complete even with 2 candidates "
                    "and majority voting"};
  }

  if (inst.norm.is_inf()) {
    if (inst.num_candidates() == 2 && inst.objective == Objective::constructive)
      return {"two-cand", ""};
    if (linf_grid_size(inst) <= kLinfGridCap) return {"linf-issues", ""};
    if (groups <= kLinfGroupCap) return {"linf-voters", ""};
    if (inst.objective == Objective::destructive)
      return {"", "refused: too many issues and distinct opinions; destructive control under "
                  "l_p norm (1 < p <= inf) is NP-complete even with two candidates and "
                  "majority voting"};
    return {"", "refused: too many issues and distinct opinions; constructive control under "
                "l_p norm (1 < p <= inf) is NP-complete for plurality voting"};
  }

  if (inst.norm.p == 2) {
    if (l2_subset_count(inst) <= kL2SubsetCap) return {"l2-issues", ""};
    if (groups <= kL2GroupCap) return {"l2-voters", ""};
    if (inst.objective == Objective::destructive)
      return {"", "refused: too many issues and distinct opinions; destructive control under "
                  "l_p norm (1 < p <= inf) is NP-complete even with two candidates and "
                  "majority voting"};
    return {"", "refused: too many issues and distinct opinions; constructive control under "
                "l_p norm (1 < p <= inf) is NP-complete for plurality voting"};
  }

  if (inst.norm.p == 1)
    return {"", "refused: no exact method covers real-valued issues under the l_1 norm; the "
                "known algorithms apply to l_2 and l_inf only"};
  return {"", "refused: no exact method covers real-valued issues under l_" +
                  std::to_string(inst.norm.p) +
                  "; the known algorithms apply to l_2 and l_inf, and the problem is "
                  "NP-complete under l_p (1 < p <= inf) for plurality voting"};
}

Verdict solve_with(const Instance& inst, const std::string& solver, const SolveOptions& opt) {
  std::string name = solver;
  if (name == "auto" || name.empty()) {
    const DispatchDecision decision = choose_solver(inst);
    if (decision.refused()) throw RefusalError(decision.refusal);
    name = decision.solver;
  }
  if (name == "bvpm") return solve_bvpm(inst, opt);
  if (name == "two-cand") return two_candidate_constructive(inst, opt);
  if (name == "linf-issues") return solve_linf_constant_issues(inst, opt);
  if (name == "linf-voters") return solve_linf_constant_voters(inst, opt);
  if (name == "l2-issues") return solve_l2_constant_issues(inst, opt);
  if (name == "l2-voters") return solve_l2_constant_voters(inst, opt);
  throw std::invalid_argument("unknown solver \"" + name + "\"");
}

}  // namespace vpm
