#pragma once

#include <array>
#include <optional>

#include "vpm/election.hpp"

namespace vpm {

struct SatLiteral {
  int var = 0;  // 1-based
  bool positive = true;
};

struct SatFormula {
  int num_vars = 0;
  std::vector<std::array<SatLiteral, 3>> clauses;

  // Each clause: exactly 3 literals over distinct in-range variables.
  void validate() const;
  bool satisfied(const std::vector<bool>& assignment) const;
  int num_clauses() const { return static_cast<int>(clauses.size()); }
};

// Issue-subset selection control: two binary candidates, pick a nonempty
// issue subset so the target wins the plurality election restricted to it.
struct BiscInstance {
  int dimension = 0;
  Vec target;  // canonical form: all-ones
  Vec rival;   // canonical form: all-zeros
  std::vector<Vec> voters;
};

// Does the target win the plurality election restricted to issues S
// (best-case ties)?
bool bisc_wins_subset(const BiscInstance& b, const std::vector<int>& subset);

struct DecoderSpec {
  enum class Kind { issue_subset, coordinate_signs };
  Kind kind = Kind::issue_subset;
  int num_vars = 0;
  std::vector<int> coords;   // witness coordinate per variable (0-based)
  double magnitude = 1;      // +magnitude -> TRUE, -magnitude -> FALSE
  // Coordinates the construction pins to a fixed value (index, value).
  std::vector<std::pair<int, double>> forced;
  double snap_tolerance = 1e-6;
};

struct ReductionOutput {
  Instance instance;
  DecoderSpec decoder;
  // construction bookkeeping
  int dummy_voters = 0;
  double alpha = 0, ell = 0, big_m = 0;
  double lower_margin = 0, upper_margin = 0;  // slack of the two-sided parameter inequality
};

struct DecodedWitness {
  std::optional<std::vector<bool>> assignment;
  std::optional<std::vector<int>> issue_subset;  // 1-based issue indices
};

ReductionOutput bisc_to_bvpm(const BiscInstance& bisc, int p);

ReductionOutput sat_to_rvpm_destructive_linf(const SatFormula& f);
ReductionOutput sat_to_rvpm_constructive_linf(const SatFormula& f);

// Smallest enclosing ball of the unit vectors e_1..e_{d'} under l_p.
struct EnclosingBallParams {
  int d_prime = 0;
  int p = 0;
  double center_coeff = 0;  // center = c * sum e_i
  double radius = 0;
};

EnclosingBallParams enclosing_ball_params(int d_prime, int p);

ReductionOutput sat_to_rvpm_destructive_lp(const SatFormula& f, int p);
ReductionOutput sat_to_rvpm_constructive_lp(const SatFormula& f, int p);

// Coordinate map applied to a witness; coordinates snap to the nearest
// encoded value within tolerance, anything else is malformed.
DecodedWitness decode_witness(const ReductionOutput& out, const Vec& witness);
std::vector<bool> decode_assignment(const ReductionOutput& out, const Vec& witness);
std::vector<int> decode_issue_subset(const ReductionOutput& out, const Vec& witness);

// Inverse of the coordinate map: the witness position encoding an
// assignment (unmapped coordinates 0, forced coordinates pinned).
Vec encode_assignment(const ReductionOutput& out, const std::vector<bool>& assignment);

}  // namespace vpm
