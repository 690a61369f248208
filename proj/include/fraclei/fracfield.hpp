#ifndef FRACLEI_FRACFIELD_HPP
#define FRACLEI_FRACFIELD_HPP

#include <cmath>
#include <string>
#include <vector>

#include "fraclei/errors.hpp"
#include "fraclei/genpoly.hpp"
#include "fraclei/special.hpp"

namespace fraclei {

/// Gamma ratio Gamma(1 + g) / Gamma(1 + g - order) of the power rule for t^g.
inline double power_rule_coefficient(double g, double order) {
  const double top = 1.0 + g;
  const double bottom = 1.0 + quantize_exponent(g - order);
  if (bottom <= 0.0 && bottom == std::floor(bottom)) {
    // 1/Gamma vanishes at the poles; the fractional integral/derivative of the
    // power is identically zero there.
    return 0.0;
  }
  return gamma(top) / gamma(bottom);
}

/// Fractional power rule extended to any real order (negative orders are
/// Riemann-Liouville integrals with lower limit 0):
///   t^g  ->  Gamma(1+g)/Gamma(1+g-order) * t^(g-order)
///
/// Applied termwise on `axis`. Terms constant in `axis` are transformed too
/// (t^0 -> t^(-order)/Gamma(1-order)), so this is the plain Riemann-Liouville
/// action; the modified derivative that annihilates constants is frac_partial.
inline GenPolynomial frac_antiderivative_power(const GenPolynomial& p, const std::string& axis, double order) {
  GenPolynomial r;
  for (const auto& [exps, c] : p.terms()) {
    auto it = exps.find(axis);
    const double g = it == exps.end() ? 0.0 : it->second;
    const double shifted = quantize_exponent(g - order);
    if (shifted < 0.0) {
      throw DomainError("power t^" + format_real(g) + " on " + axis + " has no order-" + format_real(order) +
                        " image in the generalized polynomial class");
    }
    const double k = power_rule_coefficient(g, order);
    if (k == 0.0) continue;
    ExponentMap e = exps;
    e[axis] = shifted;
    r.add_term(c * k, std::move(e));
  }
  return r;
}

/// Modified Riemann-Liouville partial derivative of order alpha in (0, 1] along
/// `axis`, lower limit 0. Terms constant in `axis` vanish; t^g with g >= alpha
/// follows the power rule; 0 < g < alpha is a domain error.
inline GenPolynomial frac_partial(const GenPolynomial& p, const std::string& axis, FractionalOrder alpha) {
  const double a = alpha.value();
  GenPolynomial r;
  for (const auto& [exps, c] : p.terms()) {
    auto it = exps.find(axis);
    if (it == exps.end()) continue;
    const double g = it->second;
    const double shifted = quantize_exponent(g - a);
    if (shifted < 0.0) {
      throw DomainError("D^" + format_real(a) + "_" + axis + " of " + axis + "^" + format_real(g) +
                        " leaves the generalized polynomial class (exponent below order)");
    }
    ExponentMap e = exps;
    e[axis] = shifted;
    r.add_term(c * power_rule_coefficient(g, a), std::move(e));
  }
  return r;
}

inline GenPolynomial frac_partial(const GenPolynomial& p, const std::string& axis, double alpha) {
  return frac_partial(p, axis, FractionalOrder(alpha));
}

/// Classical partial derivative. Throws if a fractional exponent below 1 would
/// go negative.
inline GenPolynomial classical_partial(const GenPolynomial& p, const std::string& axis) {
  GenPolynomial r;
  for (const auto& [exps, c] : p.terms()) {
    auto it = exps.find(axis);
    if (it == exps.end()) continue;
    const double g = it->second;
    if (g < 1.0) throw DomainError("classical derivative of " + axis + "^" + format_real(g) + " is singular at 0");
    ExponentMap e = exps;
    e[axis] = g - 1.0;
    r.add_term(c * g, std::move(e));
  }
  return r;
}

struct ProductSeriesResult {
  GenPolynomial value;
  int terms_used = 0;
  bool truncated = false;
};

/// Fractional Leibniz series
///   D^alpha (f h) = sum_k C(alpha, k) D^(alpha-k) f * (d/d axis)^k h
/// The k = 0 term is the modified derivative (kills constants); k >= 1 terms are
/// fractional integrals of f. The series terminates when h is polynomial in
/// `axis`. It equals frac_partial(f*h) when every term of f carries a positive
/// power of `axis`; for f constant in `axis` the k >= 1 integrals do not vanish
/// and the result differs (by the factor alpha for f = 1, h = t).
inline ProductSeriesResult frac_product_series(const GenPolynomial& f, const GenPolynomial& h,
                                               const std::string& axis, FractionalOrder alpha, int max_terms = 64) {
  if (!h.integral_in(axis)) {
    throw DomainError("frac_product_series: second factor must have integer exponents on " + axis);
  }
  const double a = alpha.value();
  ProductSeriesResult out;
  GenPolynomial dh = h;
  for (int k = 0; k < max_terms; ++k) {
    if (dh.is_zero()) return out;
    const GenPolynomial df = k == 0 ? frac_partial(f, axis, alpha) : frac_antiderivative_power(f, axis, a - k);
    const double binom = gen_binomial(a, static_cast<unsigned>(k));
    if (binom != 0.0) out.value += binom * (df * dh);
    out.terms_used = k + 1;
    dh = classical_partial(dh, axis);
  }
  out.truncated = !dh.is_zero();
  return out;
}

/// Coefficients c_h = (D^(alpha h) f)(0), h = 0..H, for f whose exponents are
/// multiples of alpha. D^(alpha h) is the h-fold sequential derivative, so
/// f = sum_h c_h t^(alpha h) / Gamma(1 + alpha h).
inline std::vector<double> fractional_taylor(const GenPolynomial& f, FractionalOrder alpha, int horizon) {
  const double a = alpha.value();
  const auto vars = f.variables();
  if (vars.size() > 1) throw DomainError("fractional_taylor: expected a single-variable polynomial");
  const std::string axis = vars.empty() ? std::string("t") : *vars.begin();
  for (const auto& [exps, _] : f.terms()) {
    auto it = exps.find(axis);
    const double g = it == exps.end() ? 0.0 : it->second;
    const double ratio = g / a;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 || std::round(ratio) > horizon) {
      throw DomainError("fractional_taylor: exponent " + format_real(g) + " is not a multiple of alpha within horizon");
    }
  }
  std::vector<double> coeffs;
  GenPolynomial cur = f;
  const Point origin{{axis, 0.0}};
  for (int h = 0; h <= horizon; ++h) {
    coeffs.push_back(cur.eval(origin));
    if (h < horizon) cur = frac_partial(cur, axis, alpha);
  }
  return coeffs;
}

/// Inverse of fractional_taylor: sum_h c_h t^(alpha h) / Gamma(1 + alpha h).
inline GenPolynomial fractional_taylor_sum(const std::vector<double>& coeffs, FractionalOrder alpha,
                                           const std::string& axis) {
  GenPolynomial r;
  for (std::size_t h = 0; h < coeffs.size(); ++h) {
    const double e = alpha.value() * static_cast<double>(h);
    r.add_term(coeffs[h] / gamma(1.0 + e), {{axis, e}});
  }
  return r;
}

inline double eval(const GenPolynomial& p, const Point& at) { return p.eval(at); }

}  // namespace fraclei

#endif  // FRACLEI_FRACFIELD_HPP
