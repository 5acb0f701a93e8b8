// Serial vs OpenMP timing for the scenario and representative-point scans.
// Each kernel keeps its serial path as the reference; this reports the
// speedup and checks that both paths reach the same decision.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "vpm/balls.hpp"
#include "vpm/boxes.hpp"
#include "vpm/bvpm.hpp"
#include "vpm/generate.hpp"
#include "vpm/oracle.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace vpm;

namespace {

template <typename F>
double time_ms(F&& fn, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
             .count() /
         reps;
}

// dispatch avoided here so the benchmark pins exactly one kernel per row
bool solve_with_name(const std::string& name, const Instance& inst, const SolveOptions& opt) {
  if (name == "bvpm") return solve_bvpm(inst, opt).yes;
  if (name == "linf-issues") return solve_linf_constant_issues(inst, opt).yes;
  if (name == "linf-voters") return solve_linf_constant_voters(inst, opt).yes;
  return solve_l2_constant_voters(inst, opt).yes;
}

void row(const std::string& name, const Instance& inst, int reps) {
  SolveOptions serial;
  serial.parallel = false;
  SolveOptions parallel;
  parallel.parallel = true;

  bool serial_yes = false, parallel_yes = false;
  const double ts = time_ms([&] { serial_yes = solve_with_name(name, inst, serial); }, reps);
  const double tp = time_ms([&] { parallel_yes = solve_with_name(name, inst, parallel); }, reps);
  std::printf("%-14s %10.2f ms %10.2f ms %7.2fx  decision %s %s\n", name.c_str(), ts, tp,
              ts / tp, serial_yes ? "YES" : "NO",
              serial_yes == parallel_yes ? "(match)" : "(MISMATCH)");
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("%-14s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

  // tight budgets keep the answers NO, so every kernel sweeps its whole
  // scenario or point space
  {
    RandomInstanceSpec spec;
    spec.issue_space = IssueSpace::binary;
    spec.dimension = 30;
    spec.candidates = 3;
    spec.voters = 50000;
    spec.groups = 10;
    spec.norm = NormSpec::lp(1);
    spec.scoring = "borda";
    spec.objective = Objective::constructive;
    spec.epsilon = 2;
    row("bvpm", random_instance(spec, 7), reps);
  }
  {
    RandomInstanceSpec spec;
    spec.issue_space = IssueSpace::real;
    spec.dimension = 4;
    spec.candidates = 8;
    spec.voters = 25;
    spec.norm = NormSpec::linf();
    spec.scoring = "borda";
    spec.objective = Objective::destructive;
    spec.epsilon = 0.7;
    spec.coord_range = 0.5;
    Instance inst = random_instance(spec, 29);
    // dominant target: voters cluster around the origin while every rival
    // sits on a far shell, so no reachable point loses and the grid sweep
    // runs to completion
    inst.candidates[0].assign(spec.dimension, 0.0);
    for (int i = 1; i < inst.num_candidates(); ++i) {
      double norm = 0;
      for (double x : inst.candidates[i]) norm = std::max(norm, std::fabs(x));
      for (double& x : inst.candidates[i]) x *= 2.0 / std::max(norm, 1e-9);
    }
    row("linf-issues", inst, reps);
  }
  {
    RandomInstanceSpec spec;
    spec.issue_space = IssueSpace::real;
    spec.dimension = 16;
    spec.candidates = 4;
    spec.voters = 5000;
    spec.groups = 7;
    spec.norm = NormSpec::linf();
    spec.scoring = "borda";
    spec.objective = Objective::destructive;
    spec.epsilon = 0.05;
    row("linf-voters", random_instance(spec, 13), reps);
  }
  {
    RandomInstanceSpec spec;
    spec.issue_space = IssueSpace::real;
    spec.dimension = 12;
    spec.candidates = 4;
    spec.voters = 3000;
    spec.groups = 5;
    spec.norm = NormSpec::lp(2);
    spec.scoring = "borda";
    spec.objective = Objective::constructive;
    spec.epsilon = 0.05;
    row("l2-voters", random_instance(spec, 17), reps);
  }
  return 0;
}
