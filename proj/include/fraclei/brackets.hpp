#ifndef FRACLEI_BRACKETS_HPP
#define FRACLEI_BRACKETS_HPP

#include <string>
#include <utility>
#include <vector>

#include "fraclei/errors.hpp"
#include "fraclei/fracfield.hpp"
#include "fraclei/genpoly.hpp"

namespace fraclei {

enum class Symmetry { none, skew, symmetric };

using PolyMatrix = std::vector<std::vector<GenPolynomial>>;

/// Fractional 2-contravariant tensor B^{ij} D^alpha_{x^i} (x) D^alpha_{x^j} on R^n,
/// stored as an n x n matrix over the coordinates x1..xn.
///
/// A skew or symmetric tag is checked when the tensor is built; a violation
/// throws StructureError.
class TensorField2 {
 public:
  TensorField2(PolyMatrix entries, Symmetry tag = Symmetry::none) : entries_(std::move(entries)), tag_(tag) {
    const std::size_t n = entries_.size();
    for (const auto& row : entries_)
      if (row.size() != n) throw StructureError("tensor must be square");
    if (tag_ == Symmetry::skew && !is_skew(entries_)) throw StructureError("tensor tagged skew is not skew-symmetric");
    if (tag_ == Symmetry::symmetric && !is_symmetric(entries_))
      throw StructureError("tensor tagged symmetric is not symmetric");
  }

  static TensorField2 zero(std::size_t n, Symmetry tag = Symmetry::none) {
    return TensorField2(PolyMatrix(n, std::vector<GenPolynomial>(n)), tag);
  }

  std::size_t dim() const noexcept { return entries_.size(); }
  Symmetry tag() const noexcept { return tag_; }
  const GenPolynomial& operator()(std::size_t i, std::size_t j) const { return entries_[i][j]; }
  const PolyMatrix& entries() const noexcept { return entries_; }

  static bool is_skew(const PolyMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = i; j < m.size(); ++j)
        if (!approx_equal(m[i][j], -m[j][i])) return false;
    return true;
  }

  static bool is_symmetric(const PolyMatrix& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = i + 1; j < m.size(); ++j)
        if (!approx_equal(m[i][j], m[j][i])) return false;
    return true;
  }

 private:
  PolyMatrix entries_;
  Symmetry tag_;
};

/// X = X^i D^alpha_{x^i}; components are coefficients in the fractional basis.
struct FracVectorField {
  std::vector<GenPolynomial> components;

  std::size_t dim() const noexcept { return components.size(); }
};

/// D^alpha_{x^i} x^i(t) = X^i(x(t)).
struct FractionalSystemSpec {
  std::size_t dim = 0;
  double alpha = 1.0;
  FracVectorField rhs;
  std::string label;
};

/// (D^alpha_{x1} f, ..., D^alpha_{xn} f)
inline std::vector<GenPolynomial> frac_gradient(const GenPolynomial& f, std::size_t n, FractionalOrder alpha) {
  std::vector<GenPolynomial> g;
  g.reserve(n);
  for (std::size_t i = 0; i < n; ++i) g.push_back(frac_partial(f, base_var(i), alpha));
  return g;
}

/// (T grad)^i = sum_j T^{ij} grad_j
inline FracVectorField contract(const TensorField2& t, const std::vector<GenPolynomial>& grad) {
  if (grad.size() != t.dim()) throw StructureError("gradient length does not match tensor dimension");
  FracVectorField out;
  for (std::size_t i = 0; i < t.dim(); ++i) {
    GenPolynomial acc;
    for (std::size_t j = 0; j < t.dim(); ++j) acc += t(i, j) * grad[j];
    out.components.push_back(std::move(acc));
  }
  return out;
}

/// [f, g]^alpha = B^{ij} D^alpha_{x^i} f D^alpha_{x^j} g, taken literally
/// (no pairing normalization).
inline GenPolynomial leibniz_bracket(const TensorField2& b, const GenPolynomial& f, const GenPolynomial& g,
                                     FractionalOrder alpha) {
  const auto df = frac_gradient(f, b.dim(), alpha);
  const auto dg = frac_gradient(g, b.dim(), alpha);
  GenPolynomial acc;
  for (std::size_t i = 0; i < b.dim(); ++i) {
    if (df[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.dim(); ++j) acc += b(i, j) * df[i] * dg[j];
  }
  return acc;
}

/// Coordinate equations [x^i, h]^alpha = B^{ij} D^alpha_{x^j} h.
///
/// This is the coordinate rule, not leibniz_bracket(B, x^i, h): the literal
/// bracket would carry the extra factor (x^i)^(1-alpha) / Gamma(2-alpha).
inline FracVectorField hamiltonian_field(const TensorField2& b, const GenPolynomial& h, FractionalOrder alpha) {
  return contract(b, frac_gradient(h, b.dim(), alpha));
}

inline PolyMatrix add(const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] += b[i][j];
  return out;
}

inline void require_metriplectic_pair(const TensorField2& p, const TensorField2& g) {
  if (p.dim() != g.dim()) throw StructureError("P and g must have the same dimension");
  if (!TensorField2::is_skew(p.entries())) throw StructureError("P must be skew-symmetric");
  if (!TensorField2::is_symmetric(g.entries())) throw StructureError("g must be symmetric");
}

/// [x^i, h]^alpha = (P^{ij} + g^{ij}) D^alpha_{x^j} h with P skew, g symmetric.
inline FracVectorField metriplectic_field(const TensorField2& p, const TensorField2& g, const GenPolynomial& h,
                                          FractionalOrder alpha) {
  require_metriplectic_pair(p, g);
  return contract(TensorField2(add(p.entries(), g.entries())), frac_gradient(h, p.dim(), alpha));
}

/// X^i = P^{ij} D^alpha_{x^j} h1 + g^{ij} D^alpha_{x^j} h2.
inline FracVectorField two_potential_field(const TensorField2& p, const TensorField2& g, const GenPolynomial& h1,
                                           const GenPolynomial& h2, FractionalOrder alpha) {
  if (p.dim() != g.dim()) throw StructureError("P and g must have the same dimension");
  auto a = contract(p, frac_gradient(h1, p.dim(), alpha));
  const auto b = contract(g, frac_gradient(h2, g.dim(), alpha));
  for (std::size_t i = 0; i < a.dim(); ++i) a.components[i] += b.components[i];
  return a;
}

struct ProductIdentityReport {
  GenPolynomial lhs;
  GenPolynomial rhs;
  GenPolynomial residual;
  bool truncated = false;

  bool holds(double rel_tol = 1e-12) const { return !truncated && approx_equal(lhs, rhs, rel_tol); }
};

/// Compares [f h, g]^alpha with the expansion
///   sum_k C(alpha,k) B^{ij} (D^(alpha-k)_{x^i} f) (d/dx^i)^k h D^alpha_{x^j} g.
inline ProductIdentityReport verify_product_identity(const TensorField2& b, const GenPolynomial& f,
                                                     const GenPolynomial& h, const GenPolynomial& g,
                                                     FractionalOrder alpha, int max_terms = 64) {
  ProductIdentityReport r;
  r.lhs = leibniz_bracket(b, f * h, g, alpha);
  const auto dg = frac_gradient(g, b.dim(), alpha);
  for (std::size_t i = 0; i < b.dim(); ++i) {
    const auto series = frac_product_series(f, h, base_var(i), alpha, max_terms);
    r.truncated = r.truncated || series.truncated;
    for (std::size_t j = 0; j < b.dim(); ++j) r.rhs += b(i, j) * series.value * dg[j];
  }
  r.residual = r.lhs - r.rhs;
  return r;
}

}  // namespace fraclei

#endif  // FRACLEI_BRACKETS_HPP
