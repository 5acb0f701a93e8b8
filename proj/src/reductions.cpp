#include "vpm/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "vpm/errors.hpp"

namespace vpm {

void SatFormula::validate() const {
  if (num_vars < 1) throw std::invalid_argument("formula needs at least one variable");
  for (size_t c = 0; c < clauses.size(); ++c) {
    std::set<int> vars;
    for (const SatLiteral& lit : clauses[c]) {
      if (lit.var < 1 || lit.var > num_vars)
        throw std::invalid_argument("clause " + std::to_string(c) + ": variable " +
                                    std::to_string(lit.var) + " out of range");
      if (!vars.insert(lit.var).second)
        throw std::invalid_argument("clause " + std::to_string(c) +
                                    ": repeated variable " + std::to_string(lit.var));
    }
  }
}

bool SatFormula::satisfied(const std::vector<bool>& assignment) const {
  for (const auto& clause : clauses) {
    bool ok = false;
    for (const SatLiteral& lit : clause) ok |= assignment[lit.var - 1] == lit.positive;
    if (!ok) return false;
  }
  return true;
}

bool bisc_wins_subset(const BiscInstance& b, const std::vector<int>& subset) {
  long long votes = 0;
  for (const Vec& v : b.voters) {
    long long dt = 0, dr = 0;
    for (int k : subset) {
      dt += v[k - 1] != b.target[k - 1];
      dr += v[k - 1] != b.rival[k - 1];
    }
    if (dt <= dr) ++votes;
  }
  return 2 * votes >= static_cast<long long>(b.voters.size());
}

ReductionOutput bisc_to_bvpm(const BiscInstance& bisc, int p) {
  if (p < 1) throw std::invalid_argument("norm order p must be >= 1");
  for (int k = 0; k < bisc.dimension; ++k) {
    if (bisc.target[k] != 1.0 || bisc.rival[k] != 0.0)
      throw std::invalid_argument(
          "issue-subset instance must be in canonical form (target all-ones, rival all-zeros)");
  }

  ReductionOutput out;
  Instance& inst = out.instance;
  inst.issue_space = IssueSpace::binary;
  inst.dimension = bisc.dimension;
  inst.candidates = {Vec(bisc.dimension, 1.0), Vec(bisc.dimension, 0.0)};
  inst.voters = bisc.voters;
  inst.norm = NormSpec::lp(p);
  inst.scoring = ScoringRule::plurality(2);
  inst.objective = Objective::constructive;
  inst.epsilon = std::pow(static_cast<double>(bisc.dimension - 1), 1.0 / p);

  out.decoder.kind = DecoderSpec::Kind::issue_subset;
  out.decoder.magnitude = 1.0;
  return out;
}

ReductionOutput sat_to_rvpm_destructive_linf(const SatFormula& f) {
  f.validate();
  const int vars = f.num_vars;
  const int r = f.num_clauses();
  const int dims = vars + 1;

  ReductionOutput out;
  Instance& inst = out.instance;
  inst.issue_space = IssueSpace::real;
  inst.dimension = dims;
  inst.norm = NormSpec::linf();
  inst.objective = Objective::destructive;
  inst.scoring = ScoringRule::plurality(2);
  inst.epsilon = 1.0;

  Vec origin(dims, 0.0);
  Vec rival(dims, 0.0);
  rival[dims - 1] = 2.0;
  inst.candidates = {origin, rival};

  for (const auto& clause : f.clauses) {
    Vec v(dims, 0.0);
    for (const SatLiteral& lit : clause) v[lit.var - 1] = lit.positive ? -1.0 : 1.0;
    inst.voters.push_back(std::move(v));
  }
  // Dummy voters at the origin: their rival distance stays 2 while the
  // moved target stays within 1, so they never defect.
  for (int i = 0; i < r; ++i) inst.voters.push_back(origin);
  out.dummy_voters = r;

  out.decoder.kind = DecoderSpec::Kind::coordinate_signs;
  out.decoder.num_vars = vars;
  for (int v = 0; v < vars; ++v) out.decoder.coords.push_back(v);
  out.decoder.magnitude = 1.0;
  return out;
}

ReductionOutput sat_to_rvpm_constructive_linf(const SatFormula& f) {
  f.validate();
  const int vars = f.num_vars;
  const int r = f.num_clauses();
  const int dims = vars + 1;

  ReductionOutput out;
  Instance& inst = out.instance;
  inst.issue_space = IssueSpace::real;
  inst.dimension = dims;
  inst.norm = NormSpec::linf();
  inst.objective = Objective::constructive;
  inst.epsilon = 0.5;

  inst.candidates.push_back(Vec(dims, 0.0));  // target

  // Per clause, one voter/candidate pair for each of the 7 local
  // assignments that satisfy it; the pair sits at distance exactly 1/2.
  for (const auto& clause : f.clauses) {
    for (int pattern = 0; pattern < 8; ++pattern) {
      bool satisfied = false;
      for (int t = 0; t < 3; ++t) {
        const bool value = pattern & (1 << t);
        satisfied |= value == clause[t].positive;
      }
      if (!satisfied) continue;
      Vec voter(dims, 0.0);
      for (int t = 0; t < 3; ++t)
        voter[clause[t].var - 1] = (pattern & (1 << t)) ? 1.0 : -1.0;
      Vec candidate = voter;
      candidate[dims - 1] = 0.5;
      inst.voters.push_back(std::move(voter));
      inst.candidates.push_back(std::move(candidate));
    }
  }

  Vec rival(dims, 5.0);
  inst.candidates.push_back(rival);
  for (int i = 0; i < r; ++i) inst.voters.push_back(rival);
  out.dummy_voters = r;
  out.big_m = 5.0;

  inst.scoring = ScoringRule::plurality(inst.num_candidates());

  out.decoder.kind = DecoderSpec::Kind::coordinate_signs;
  out.decoder.num_vars = vars;
  for (int v = 0; v < vars; ++v) out.decoder.coords.push_back(v);
  out.decoder.magnitude = 0.5;
  return out;
}

EnclosingBallParams enclosing_ball_params(int d_prime, int p) {
  if (d_prime < 2) throw std::invalid_argument("enclosing ball needs d' >= 2");
  if (p < 2) throw std::invalid_argument("closed form undefined for p = 1");
  EnclosingBallParams params;
  params.d_prime = d_prime;
  params.p = p;
  params.center_coeff = 1.0 / (1.0 + std::pow(static_cast<double>(d_prime - 1), 1.0 / (p - 1)));
  const double c = params.center_coeff;
  params.radius = std::pow((d_prime - 1) * std::pow(c, p) + std::pow(1.0 - c, p), 1.0 / p);
  return params;
}

namespace {

struct TwoSided {
  double alpha = 0, ell = 0;
  double lower_margin = 0, upper_margin = 0;
  bool found = false;
};

// Find (alpha, ell) with lower(alpha, ell) < target < upper(alpha, ell).
// Existence follows from continuity and the positive gap upper - lower; the
// grid scan plus local refinement realizes it numerically.
template <typename FL, typename FU>
TwoSided search_alpha_ell(FL&& lower, FU&& upper, double target, double min_margin) {
  TwoSided best;
  auto margin = [&](double a, double l) {
    return std::min(upper(a, l) - target, target - lower(a, l));
  };
  std::vector<double> ladder{1.0};
  for (int i = 1; i <= 12; ++i) {
    ladder.push_back(std::pow(2.0, i));
    ladder.push_back(std::pow(2.0, -i));
  }
  for (double l : ladder) {
    double best_alpha = 0, best_m = -1;
    for (int i = 0; i <= 400; ++i) {
      const double a = std::pow(10.0, -4.0 + 8.0 * i / 400.0);
      const double m = margin(a, l);
      if (m > best_m) {
        best_m = m;
        best_alpha = a;
      }
    }
    if (best_m <= 0) continue;
    // refine around the grid optimum
    double lo = best_alpha / 1.1, hi = best_alpha * 1.1;
    for (int round = 0; round < 60; ++round) {
      const double m1 = margin(lo + (hi - lo) / 3, l);
      const double m2 = margin(hi - (hi - lo) / 3, l);
      if (m1 < m2)
        lo = lo + (hi - lo) / 3;
      else
        hi = hi - (hi - lo) / 3;
    }
    const double a = (lo + hi) / 2;
    const double m = margin(a, l);
    if (m >= min_margin && (!best.found || m > std::min(best.lower_margin, best.upper_margin))) {
      best.found = true;
      best.alpha = a;
      best.ell = l;
      best.lower_margin = target - lower(a, l);
      best.upper_margin = upper(a, l) - target;
    }
    if (best.found) break;
  }
  return best;
}

}  // namespace

ReductionOutput sat_to_rvpm_destructive_lp(const SatFormula& f, int p) {
  f.validate();
  if (p < 2) throw std::invalid_argument("construction needs integer p >= 2");
  const int vars = f.num_vars;
  if (vars < 3) throw std::invalid_argument("construction needs at least 3 variables");
  const int r = f.num_clauses();
  const int d = vars + 1;
  const int dims = d + 1;

  const double inv_d = 1.0 / d;
  const double a_pow = std::pow(inv_d + 1.0, p) + std::pow(inv_d, p) * (d - 1) - 1.0;
  const double a = std::pow(a_pow, 1.0 / p);
  const double eps = std::pow(static_cast<double>(d), 1.0 / p - 1.0);

  auto common = [&](double alpha, double ell) {
    return (d - 4) * std::pow(inv_d, p) + std::pow(inv_d + ell * alpha, p) -
           3.0 * std::pow(alpha, p) - std::pow(ell * alpha, p);
  };
  auto upper = [&](double alpha, double ell) {
    return std::pow(inv_d + alpha, p) + 2.0 * std::pow(std::fabs(inv_d - alpha), p) +
           common(alpha, ell);
  };
  auto lower = [&](double alpha, double ell) {
    return 3.0 * std::pow(std::fabs(inv_d - alpha), p) + common(alpha, ell);
  };
  const TwoSided params = search_alpha_ell(lower, upper, a_pow, 1e-8);
  if (!params.found)
    throw std::runtime_error("parameter search failed for the destructive l_p construction");

  ReductionOutput out;
  out.alpha = params.alpha;
  out.ell = params.ell;
  out.lower_margin = params.lower_margin;
  out.upper_margin = params.upper_margin;

  Instance& inst = out.instance;
  inst.issue_space = IssueSpace::real;
  inst.dimension = dims;
  inst.norm = NormSpec::lp(p);
  inst.objective = Objective::destructive;
  inst.scoring = ScoringRule::plurality(2);
  inst.epsilon = eps;

  Vec origin(dims, 0.0);
  Vec rival(dims, 0.0);
  rival[dims - 1] = a;
  inst.candidates = {origin, rival};

  for (const auto& clause : f.clauses) {
    Vec v(dims, 0.0);
    for (const SatLiteral& lit : clause)
      v[lit.var - 1] = lit.positive ? -params.alpha : params.alpha;
    v[d - 1] = params.ell * params.alpha;
    inst.voters.push_back(std::move(v));
  }
  for (int i = 1; i <= d; ++i) {
    Vec plus(dims, 0.0), minus(dims, 0.0);
    plus[i - 1] = 1.0;
    minus[i - 1] = -1.0;
    inst.voters.push_back(std::move(plus));
    inst.voters.push_back(std::move(minus));
  }
  Vec loyal(dims, 0.0);
  loyal[dims - 1] = -a;
  for (int i = 0; i < r; ++i) inst.voters.push_back(loyal);
  out.dummy_voters = r;

  out.decoder.kind = DecoderSpec::Kind::coordinate_signs;
  out.decoder.num_vars = vars;
  for (int v = 0; v < vars; ++v) out.decoder.coords.push_back(v);
  out.decoder.magnitude = inv_d;
  out.decoder.forced = {{d - 1, -inv_d}, {dims - 1, 0.0}};
  return out;
}

ReductionOutput sat_to_rvpm_constructive_lp(const SatFormula& f, int p) {
  f.validate();
  if (p < 2) throw std::invalid_argument("construction needs integer p >= 2");
  const int vars = f.num_vars;
  if (vars < 3) throw std::invalid_argument("construction needs at least 3 variables");
  const int r = f.num_clauses();
  const int d = vars + 2;
  const int d_prime = d - 1;

  const EnclosingBallParams ball = enclosing_ball_params(d_prime, p);
  const double c = ball.center_coeff;
  const double radius_pow = std::pow(ball.radius, p);

  auto common = [&](double alpha, double ell) {
    return (d_prime - 4) * std::pow(c, p) + std::pow(std::fabs(ell * alpha - c), p);
  };
  auto upper = [&](double alpha, double ell) {
    return 3.0 * std::pow(alpha + c, p) + common(alpha, ell);
  };
  auto lower = [&](double alpha, double ell) {
    return std::pow(std::fabs(alpha - c), p) + 2.0 * std::pow(alpha + c, p) +
           common(alpha, ell);
  };
  const TwoSided params = search_alpha_ell(lower, upper, radius_pow, 1e-8);
  if (!params.found)
    throw std::runtime_error("parameter search failed for the constructive l_p construction");

  ReductionOutput out;
  out.alpha = params.alpha;
  out.ell = params.ell;
  out.lower_margin = params.lower_margin;
  out.upper_margin = params.upper_margin;

  Instance& inst = out.instance;
  inst.issue_space = IssueSpace::real;
  inst.dimension = d;
  inst.norm = NormSpec::lp(p);
  inst.objective = Objective::constructive;
  inst.epsilon = c * std::pow(static_cast<double>(d_prime), 1.0 / p);

  inst.candidates.push_back(Vec(d, 0.0));  // target

  double gadget_norm = 0;
  auto track_norm = [&](const Vec& v) {
    gadget_norm = std::max(gadget_norm, distance(v, Vec(d, 0.0), inst.norm));
  };

  for (const auto& clause : f.clauses) {
    Vec voter(d, 0.0);
    for (const SatLiteral& lit : clause)
      voter[lit.var - 1] = lit.positive ? params.alpha : -params.alpha;
    voter[d_prime - 1] = params.ell * params.alpha;
    Vec candidate = voter;
    candidate[d - 1] = ball.radius;
    track_norm(voter);
    track_norm(candidate);
    inst.voters.push_back(std::move(voter));
    inst.candidates.push_back(std::move(candidate));
  }
  for (int i = 1; i <= d_prime; ++i) {
    for (double sign : {1.0, -1.0}) {
      Vec voter(d, 0.0);
      voter[i - 1] = sign;
      Vec candidate = voter;
      candidate[d - 1] = ball.radius;
      track_norm(voter);
      track_norm(candidate);
      inst.voters.push_back(std::move(voter));
      inst.candidates.push_back(std::move(candidate));
    }
  }

  const double big_m = std::max(5.0, 10.0 * gadget_norm);
  out.big_m = big_m;
  Vec rival(d, 0.0);
  rival[0] = big_m;
  inst.candidates.push_back(rival);
  for (int i = 0; i < d_prime + r; ++i) inst.voters.push_back(rival);
  out.dummy_voters = d_prime + r;

  inst.scoring = ScoringRule::plurality(inst.num_candidates());

  out.decoder.kind = DecoderSpec::Kind::coordinate_signs;
  out.decoder.num_vars = vars;
  for (int v = 0; v < vars; ++v) out.decoder.coords.push_back(v);
  out.decoder.magnitude = c;
  out.decoder.forced = {{d_prime - 1, c}, {d - 1, 0.0}};
  return out;
}

namespace {

double snap(double value, std::initializer_list<double> targets, double tol,
            const char* what) {
  for (double t : targets)
    if (std::fabs(value - t) <= tol) return t;
  throw MalformedWitness(std::string(what) + ": coordinate " + std::to_string(value) +
                         " snaps to no encoded value");
}

}  // namespace

DecodedWitness decode_witness(const ReductionOutput& out, const Vec& witness) {
  if (witness.size() != out.instance.target().size())
    throw MalformedWitness("witness dimension mismatch");
  const double tol = out.decoder.snap_tolerance;
  DecodedWitness decoded;

  if (out.decoder.kind == DecoderSpec::Kind::issue_subset) {
    std::vector<int> subset;
    for (size_t k = 0; k < witness.size(); ++k)
      if (snap(witness[k], {0.0, 1.0}, tol, "issue subset") == 1.0)
        subset.push_back(static_cast<int>(k) + 1);
    decoded.issue_subset = std::move(subset);
    return decoded;
  }

  for (const auto& [coord, value] : out.decoder.forced)
    snap(witness[coord], {value}, tol, "pinned coordinate");
  std::vector<bool> assignment(out.decoder.num_vars);
  const double mag = out.decoder.magnitude;
  for (int v = 0; v < out.decoder.num_vars; ++v)
    assignment[v] = snap(witness[out.decoder.coords[v]], {mag, -mag}, tol, "sign coordinate") > 0;
  decoded.assignment = std::move(assignment);
  return decoded;
}

std::vector<bool> decode_assignment(const ReductionOutput& out, const Vec& witness) {
  const DecodedWitness decoded = decode_witness(out, witness);
  if (!decoded.assignment) throw MalformedWitness("witness does not encode an assignment");
  return *decoded.assignment;
}

std::vector<int> decode_issue_subset(const ReductionOutput& out, const Vec& witness) {
  const DecodedWitness decoded = decode_witness(out, witness);
  if (!decoded.issue_subset) throw MalformedWitness("witness does not encode an issue subset");
  return *decoded.issue_subset;
}

Vec encode_assignment(const ReductionOutput& out, const std::vector<bool>& assignment) {
  if (static_cast<int>(assignment.size()) != out.decoder.num_vars)
    throw std::invalid_argument("assignment length mismatch");
  Vec witness(out.instance.target().size(), 0.0);
  for (int v = 0; v < out.decoder.num_vars; ++v)
    witness[out.decoder.coords[v]] = assignment[v] ? out.decoder.magnitude
                                                   : -out.decoder.magnitude;
  for (const auto& [coord, value] : out.decoder.forced) witness[coord] = value;
  return witness;
}

}  // namespace vpm
