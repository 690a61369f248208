#ifndef FRACLEI_SPECIAL_HPP
#define FRACLEI_SPECIAL_HPP

#include <cmath>
#include <string>

#include "fraclei/errors.hpp"

namespace fraclei {

/// Order of a fractional derivative, restricted to (0, 1].
class FractionalOrder {
 public:
  explicit FractionalOrder(double value) : value_(value) {
    if (!(value > 0.0 && value <= 1.0)) {
      throw DomainError("fractional order must lie in (0, 1], got " + std::to_string(value));
    }
  }

  double value() const noexcept { return value_; }
  bool is_classical() const noexcept { return value_ == 1.0; }

  friend bool operator==(FractionalOrder a, FractionalOrder b) { return a.value_ == b.value_; }

 private:
  double value_;
};

/// Euler gamma function. Throws DomainError at the poles 0, -1, -2, ...
inline double gamma(double z) {
  if (z <= 0.0 && z == std::floor(z)) {
    throw DomainError("gamma pole at " + std::to_string(z));
  }
  return std::tgamma(z);
}

/// Generalized binomial coefficient alpha choose k by the falling factorial.
inline double gen_binomial(double alpha, unsigned k) {
  double r = 1.0;
  for (unsigned j = 0; j < k; ++j) {
    r *= (alpha - j) / static_cast<double>(j + 1);
  }
  return r;
}

struct MittagLefflerOptions {
  double series_radius = 10.0;
  int max_terms = 500;
  double relative_cutoff = 1e-15;
};

/// One-parameter Mittag-Leffler function E_alpha(z) = sum z^k / Gamma(1 + alpha k).
///
/// Direct power series. Terms are formed through lgamma so large k does not
/// overflow; accuracy degrades for large negative z through cancellation, so
/// the admissible radius is capped (default |z| <= 10).
inline double mittag_leffler(FractionalOrder alpha, double z, const MittagLefflerOptions& opts = {}) {
  if (std::abs(z) > opts.series_radius) {
    throw DomainError("mittag_leffler: |z| exceeds series radius");
  }
  if (z == 0.0) return 1.0;
  const double a = alpha.value();
  const double log_abs_z = std::log(std::abs(z));
  double sum = 1.0;
  for (int k = 1; k < opts.max_terms; ++k) {
    const double mag = std::exp(k * log_abs_z - std::lgamma(1.0 + a * k));
    const double term = (z < 0.0 && (k % 2 == 1)) ? -mag : mag;
    sum += term;
    // Terms shrink monotonically once k*alpha passes |z|^(1/alpha).
    if (std::abs(term) < opts.relative_cutoff * std::abs(sum) && a * k > std::pow(std::abs(z), 1.0 / a)) {
      return sum;
    }
  }
  throw NonConvergenceError("mittag_leffler: series did not converge within term cap");
}

}  // namespace fraclei

#endif  // FRACLEI_SPECIAL_HPP
