#pragma once

#include <string>

#include "vpm/election.hpp"
#include "vpm/parallel.hpp"

namespace vpm {

// The tractability map in one place: which exact solver covers an instance,
// or the hardness result that justifies refusing it.
struct DispatchDecision {
  std::string solver;   // bvpm|two-cand|linf-issues|linf-voters|l2-issues|l2-voters
  std::string refusal;  // non-empty when no exact solver applies

  bool refused() const { return !refusal.empty(); }
};

DispatchDecision choose_solver(const Instance& inst);

// Run the named solver ("auto" consults choose_solver). Throws RefusalError
// when the instance falls outside every tractable regime.
Verdict solve_with(const Instance& inst, const std::string& solver,
                   const SolveOptions& opt = {});

inline Verdict solve_auto(const Instance& inst, const SolveOptions& opt = {}) {
  return solve_with(inst, "auto", opt);
}

}  // namespace vpm
