#include "vpm/generate.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace vpm {

namespace {

Vec random_position(std::mt19937_64& rng, IssueSpace space, int dimension, double range) {
  Vec v(dimension);
  if (space == IssueSpace::binary) {
    for (int k = 0; k < dimension; ++k) v[k] = static_cast<double>(rng() & 1);
  } else {
    std::uniform_real_distribution<double> coord(-range, range);
    for (int k = 0; k < dimension; ++k) v[k] = coord(rng);
  }
  return v;
}

std::vector<Vec> distinct_positions(std::mt19937_64& rng, IssueSpace space, int dimension,
                                    double range, int count) {
  std::set<Vec> seen;
  std::vector<Vec> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    Vec v = random_position(rng, space, dimension, range);
    if (seen.insert(v).second) out.push_back(std::move(v));
    if (++attempts > 1000 * count)
      throw std::invalid_argument("cannot draw " + std::to_string(count) +
                                  " distinct positions in this issue space");
  }
  return out;
}

}  // namespace

Instance random_instance(const RandomInstanceSpec& spec, uint64_t seed) {
  std::mt19937_64 rng(seed);
  Instance inst;
  inst.issue_space = spec.issue_space;
  inst.dimension = spec.dimension;
  inst.norm = spec.norm;
  inst.objective = spec.objective;
  inst.epsilon = spec.epsilon;

  inst.candidates = distinct_positions(rng, spec.issue_space, spec.dimension, spec.coord_range,
                                       spec.candidates);

  if (spec.scoring == "plurality")
    inst.scoring = ScoringRule::plurality(spec.candidates);
  else if (spec.scoring == "veto")
    inst.scoring = ScoringRule::veto(spec.candidates);
  else if (spec.scoring == "borda")
    inst.scoring = ScoringRule::borda(spec.candidates);
  else if (spec.scoring == "k_approval")
    inst.scoring = ScoringRule::k_approval(spec.candidates, spec.approval_k);
  else
    throw std::invalid_argument("unknown scoring rule \"" + spec.scoring + "\"");

  if (spec.groups > 0) {
    if (spec.groups > spec.voters)
      throw std::invalid_argument("more opinion groups than voters");
    const std::vector<Vec> positions =
        distinct_positions(rng, spec.issue_space, spec.dimension, spec.coord_range, spec.groups);
    // One voter pins each group, the rest spread uniformly.
    std::vector<long long> weights(spec.groups, 1);
    std::uniform_int_distribution<int> pick(0, spec.groups - 1);
    for (long long i = spec.groups; i < spec.voters; ++i) ++weights[pick(rng)];
    inst.voters = positions;
    inst.weights = std::move(weights);
  } else {
    for (long long i = 0; i < spec.voters; ++i)
      inst.voters.push_back(random_position(rng, spec.issue_space, spec.dimension,
                                            spec.coord_range));
  }
  return inst;
}

BiscInstance random_bisc(int dimension, int voters, uint64_t seed) {
  std::mt19937_64 rng(seed);
  BiscInstance b;
  b.dimension = dimension;
  b.target.assign(dimension, 1.0);
  b.rival.assign(dimension, 0.0);
  for (int i = 0; i < voters; ++i)
    b.voters.push_back(random_position(rng, IssueSpace::binary, dimension, 1.0));
  return b;
}

SatFormula random_3sat(int num_vars, int num_clauses, uint64_t seed) {
  if (num_vars < 3) throw std::invalid_argument("3-literal clauses need at least 3 variables");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> var(1, num_vars);
  SatFormula f;
  f.num_vars = num_vars;
  for (int c = 0; c < num_clauses; ++c) {
    std::set<int> vars;
    while (vars.size() < 3) vars.insert(var(rng));
    std::array<SatLiteral, 3> clause;
    int t = 0;
    for (int v : vars) clause[t++] = {v, (rng() & 1) != 0};
    f.clauses.push_back(clause);
  }
  f.validate();
  return f;
}

}  // namespace vpm
