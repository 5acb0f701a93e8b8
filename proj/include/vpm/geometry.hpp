#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace vpm {

using Vec = std::vector<double>;

// Relative comparison tolerance for real-valued issue spaces. Binary
// instances never rely on it: their comparisons happen on exact integers.
inline constexpr double kTol = 1e-9;

inline double tol_scale(double a, double b) {
  return kTol * std::max({1.0, std::fabs(a), std::fabs(b)});
}
inline bool approx_eq(double a, double b) { return std::fabs(a - b) <= tol_scale(a, b); }
inline bool approx_le(double a, double b) { return a <= b + tol_scale(a, b); }
inline bool approx_lt(double a, double b) { return a < b - tol_scale(a, b); }
inline bool approx_ge(double a, double b) { return approx_le(b, a); }

struct NormSpec {
  static constexpr int kInf = -1;
  int p = 2;  // >= 1, or kInf for the Chebyshev norm

  bool is_inf() const { return p == kInf; }

  static NormSpec lp(int p) {
    if (p < 1) throw std::invalid_argument("norm order p must be >= 1");
    return NormSpec{p};
  }
  static NormSpec linf() { return NormSpec{kInf}; }

  std::string str() const { return is_inf() ? "inf" : std::to_string(p); }
  bool operator==(const NormSpec&) const = default;
};

inline void require_same_dim(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw std::invalid_argument("dimension mismatch: " + std::to_string(x.size()) +
                                " vs " + std::to_string(y.size()));
}

// Sum of |x_k - y_k|^p without the final root; finite p only. On 0/1
// positions this equals the Hamming distance and is an exact integer.
inline double distance_pow(std::span<const double> x, std::span<const double> y, int p) {
  require_same_dim(x, y);
  double acc = 0;
  for (size_t k = 0; k < x.size(); ++k) {
    const double d = std::fabs(x[k] - y[k]);
    if (p == 1)
      acc += d;
    else if (p == 2)
      acc += d * d;
    else
      acc += std::pow(d, p);
  }
  return acc;
}

inline double distance(std::span<const double> x, std::span<const double> y, NormSpec norm) {
  require_same_dim(x, y);
  if (norm.is_inf()) {
    double m = 0;
    for (size_t k = 0; k < x.size(); ++k) m = std::max(m, std::fabs(x[k] - y[k]));
    return m;
  }
  const double pw = distance_pow(x, y, norm.p);
  if (norm.p == 1) return pw;
  if (norm.p == 2) return std::sqrt(pw);
  return std::pow(pw, 1.0 / norm.p);
}

inline long long hamming(std::span<const double> x, std::span<const double> y) {
  require_same_dim(x, y);
  long long h = 0;
  for (size_t k = 0; k < x.size(); ++k) h += (x[k] != y[k]);
  return h;
}

}  // namespace vpm
