#include <doctest.h>

#include <random>

#include "test_helpers.hpp"
#include "vpm/balls.hpp"
#include "vpm/boxes.hpp"
#include "vpm/bvpm.hpp"

using namespace vpm;

// The OpenMP paths must reproduce the serial reference bit for bit: same
// decision, same witness, same scenario accounting.

TEST_CASE("parallel and serial bvpm agree") {
  std::mt19937_64 rng(3001);
  SolveOptions serial;
  serial.parallel = false;
  SolveOptions parallel;
  parallel.parallel = true;
  for (int trial = 0; trial < 60; ++trial) {
    const Instance inst = test::small_random_bvpm(rng);
    const Verdict a = solve_bvpm(inst, serial);
    const Verdict b = solve_bvpm(inst, parallel);
    REQUIRE(a.yes == b.yes);
    CHECK(a.scenarios_total == b.scenarios_total);
    if (a.yes) CHECK(a.witness == b.witness);
  }
}

TEST_CASE("parallel and serial box solvers agree") {
  std::mt19937_64 rng(3003);
  std::uniform_real_distribution<double> coord(-2, 2);
  SolveOptions serial;
  serial.parallel = false;
  for (int trial = 0; trial < 40; ++trial) {
    Instance inst;
    inst.issue_space = IssueSpace::real;
    inst.dimension = 2;
    for (int i = 0; i < 3; ++i) inst.candidates.push_back({coord(rng), coord(rng)});
    for (int j = 0; j < 3; ++j) inst.voters.push_back({coord(rng), coord(rng)});
    inst.norm = NormSpec::linf();
    inst.scoring = ScoringRule::borda(3);
    inst.objective = trial % 2 ? Objective::constructive : Objective::destructive;
    inst.epsilon = 1;

    const Verdict a = solve_linf_constant_issues(inst, serial);
    const Verdict b = solve_linf_constant_issues(inst);
    REQUIRE(a.yes == b.yes);
    if (a.yes) CHECK(a.witness == b.witness);

    const Verdict c = solve_linf_constant_voters(inst, serial);
    const Verdict d = solve_linf_constant_voters(inst);
    REQUIRE(c.yes == d.yes);
    if (c.yes) CHECK(c.witness == d.witness);
  }
}

TEST_CASE("parallel and serial ball solvers agree") {
  std::mt19937_64 rng(3005);
  std::uniform_real_distribution<double> coord(-2, 2);
  SolveOptions serial;
  serial.parallel = false;
  for (int trial = 0; trial < 40; ++trial) {
    Instance inst;
    inst.issue_space = IssueSpace::real;
    inst.dimension = 2;
    for (int i = 0; i < 3; ++i) inst.candidates.push_back({coord(rng), coord(rng)});
    for (int j = 0; j < 2; ++j) inst.voters.push_back({coord(rng), coord(rng)});
    inst.norm = NormSpec::lp(2);
    inst.scoring = ScoringRule::plurality(3);
    inst.objective = trial % 2 ? Objective::constructive : Objective::destructive;
    inst.epsilon = 1.5;

    const Verdict a = solve_l2_constant_issues(inst, serial);
    const Verdict b = solve_l2_constant_issues(inst);
    REQUIRE(a.yes == b.yes);
    if (a.yes) CHECK(a.witness == b.witness);
  }
}
