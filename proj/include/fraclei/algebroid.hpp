#ifndef FRACLEI_ALGEBROID_HPP
#define FRACLEI_ALGEBROID_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fraclei/brackets.hpp"
#include "fraclei/errors.hpp"
#include "fraclei/fracfield.hpp"
#include "fraclei/genpoly.hpp"

namespace fraclei {

using PolyTensor3 = std::vector<std::vector<std::vector<GenPolynomial>>>;

struct AlgebroidTags {
  // C_ab^d = -C_ba^d together with rho1 = -rho2.
  bool pre_lie = false;
  // C_ab^d = C_ba^d.
  bool symmetric = false;
};

/// Fractional Leibniz algebroid on the trivial bundle R^n x R^m in a fixed
/// frame: structure functions C[a][b][d] = C_ab^d(x) and anchors
/// rho1[a][i] = rho_{1a}^i(x), rho2[a][i] = rho_{2a}^i(x).
class AlgebroidStructure {
 public:
  AlgebroidStructure(std::size_t n, std::size_t m, PolyTensor3 c, PolyMatrix rho1, PolyMatrix rho2,
                     AlgebroidTags tags = {})
      : n_(n), m_(m), c_(std::move(c)), rho1_(std::move(rho1)), rho2_(std::move(rho2)), tags_(tags) {
    if (c_.size() != m_) throw StructureError("C must have m x m x m entries");
    for (const auto& plane : c_) {
      if (plane.size() != m_) throw StructureError("C must have m x m x m entries");
      for (const auto& row : plane)
        if (row.size() != m_) throw StructureError("C must have m x m x m entries");
    }
    check_anchor(rho1_, "rho1");
    check_anchor(rho2_, "rho2");
    for (const auto& p : all_coefficients()) {
      for (const auto& v : p->variables()) {
        if (v.rfind("xi", 0) == 0) throw StructureError("structure functions must depend on base coordinates only");
      }
    }
    if (tags_.pre_lie) {
      if (!c_antisymmetric()) throw StructureError("pre-Lie tag: C_ab^d is not antisymmetric in a, b");
      if (!anchors_opposed()) throw StructureError("pre-Lie tag: anchors do not satisfy rho1 = -rho2");
    }
    if (tags_.symmetric && !c_symmetric()) throw StructureError("symmetric tag: C_ab^d is not symmetric in a, b");
  }

  static AlgebroidStructure zero(std::size_t n, std::size_t m) {
    return {n, m, PolyTensor3(m, PolyMatrix(m, std::vector<GenPolynomial>(m))),
            PolyMatrix(m, std::vector<GenPolynomial>(n)), PolyMatrix(m, std::vector<GenPolynomial>(n))};
  }

  std::size_t base_dim() const noexcept { return n_; }
  std::size_t fibre_dim() const noexcept { return m_; }
  const GenPolynomial& c(std::size_t a, std::size_t b, std::size_t d) const { return c_[a][b][d]; }
  const GenPolynomial& rho1(std::size_t a, std::size_t i) const { return rho1_[a][i]; }
  const GenPolynomial& rho2(std::size_t a, std::size_t i) const { return rho2_[a][i]; }
  const PolyTensor3& structure_functions() const noexcept { return c_; }
  const PolyMatrix& anchor1() const noexcept { return rho1_; }
  const PolyMatrix& anchor2() const noexcept { return rho2_; }
  const AlgebroidTags& tags() const noexcept { return tags_; }

  bool c_antisymmetric() const {
    for (std::size_t a = 0; a < m_; ++a)
      for (std::size_t b = 0; b < m_; ++b)
        for (std::size_t d = 0; d < m_; ++d)
          if (!approx_equal(c_[a][b][d], -c_[b][a][d])) return false;
    return true;
  }

  bool c_symmetric() const {
    for (std::size_t a = 0; a < m_; ++a)
      for (std::size_t b = a + 1; b < m_; ++b)
        for (std::size_t d = 0; d < m_; ++d)
          if (!approx_equal(c_[a][b][d], c_[b][a][d])) return false;
    return true;
  }

  bool anchors_opposed() const {
    for (std::size_t a = 0; a < m_; ++a)
      for (std::size_t i = 0; i < n_; ++i)
        if (!approx_equal(rho1_[a][i], -rho2_[a][i])) return false;
    return true;
  }

 private:
  void check_anchor(const PolyMatrix& r, const char* name) const {
    if (r.size() != m_) throw StructureError(std::string(name) + " must be m x n");
    for (const auto& row : r)
      if (row.size() != n_) throw StructureError(std::string(name) + " must be m x n");
  }

  std::vector<const GenPolynomial*> all_coefficients() const {
    std::vector<const GenPolynomial*> out;
    for (const auto& plane : c_)
      for (const auto& row : plane)
        for (const auto& p : row) out.push_back(&p);
    for (const auto& row : rho1_)
      for (const auto& p : row) out.push_back(&p);
    for (const auto& row : rho2_)
      for (const auto& p : row) out.push_back(&p);
    return out;
  }

  std::size_t n_, m_;
  PolyTensor3 c_;
  PolyMatrix rho1_, rho2_;
  AlgebroidTags tags_;
};

/// sigma = sigma^a(x) e_a
struct Section {
  std::vector<GenPolynomial> components;

  static Section basis(std::size_t m, std::size_t a) {
    Section s{std::vector<GenPolynomial>(m)};
    s.components[a] = GenPolynomial::constant(1.0);
    return s;
  }
};

/// Fibre-linear function sigma^a xi_a on the dual bundle.
inline GenPolynomial pair_with_fibre(const Section& s) {
  GenPolynomial out;
  for (std::size_t a = 0; a < s.components.size(); ++a) out += s.components[a] * GenPolynomial::variable(fibre_var(a));
  return out;
}

/// [s1, s2]^b = s1^a rho1_a^i D^alpha_i s2^b - s2^a rho2_a^i D^alpha_i s1^b + s1^a s2^c C_ac^b
inline Section section_bracket(const AlgebroidStructure& s, const Section& s1, const Section& s2,
                               FractionalOrder alpha) {
  const std::size_t n = s.base_dim();
  const std::size_t m = s.fibre_dim();
  if (s1.components.size() != m || s2.components.size() != m) throw StructureError("section length must equal m");
  Section out{std::vector<GenPolynomial>(m)};
  for (std::size_t b = 0; b < m; ++b) {
    const auto d_s2 = frac_gradient(s2.components[b], n, alpha);
    const auto d_s1 = frac_gradient(s1.components[b], n, alpha);
    GenPolynomial acc;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t i = 0; i < n; ++i) {
        acc += s1.components[a] * s.rho1(a, i) * d_s2[i];
        acc -= s2.components[a] * s.rho2(a, i) * d_s1[i];
      }
      for (std::size_t c = 0; c < m; ++c) acc += s1.components[a] * s2.components[c] * s.c(a, c, b);
    }
    out.components[b] = std::move(acc);
  }
  return out;
}

/// Components of a fractional differential d^{alpha beta} u in the basis
/// {d(x^i)^alpha, d(xi_a)^beta}.
struct FracCovector {
  std::vector<GenPolynomial> dx;
  std::vector<GenPolynomial> dxi;
};

/// Lambda = A_ab D_xi_a (x) D_xi_b + rho1_a^i D_xi_a (x) D_x^i - rho2_a^i D_x^i (x) D_xi_a
struct LambdaTensor {
  std::size_t n = 0, m = 0;
  PolyMatrix a_block;     // m x m over (x, xi)
  PolyMatrix rho1_block;  // m x n over x
  PolyMatrix rho2_block;  // m x n over x, enters with a minus sign
};

inline LambdaTensor assemble_lambda(const AlgebroidStructure& s) {
  const std::size_t m = s.fibre_dim();
  LambdaTensor l{s.base_dim(), m, PolyMatrix(m, std::vector<GenPolynomial>(m)), s.anchor1(), s.anchor2()};
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t d = 0; d < m; ++d) l.a_block[a][b] += s.c(a, b, d) * GenPolynomial::variable(fibre_var(d));
  return l;
}

/// Lambda(du, dv).
inline GenPolynomial lambda_bracket(const LambdaTensor& l, const FracCovector& du, const FracCovector& dv) {
  GenPolynomial acc;
  for (std::size_t a = 0; a < l.m; ++a) {
    if (!du.dxi[a].is_zero()) {
      for (std::size_t b = 0; b < l.m; ++b) acc += l.a_block[a][b] * du.dxi[a] * dv.dxi[b];
      for (std::size_t i = 0; i < l.n; ++i) acc += l.rho1_block[a][i] * du.dxi[a] * dv.dx[i];
    }
    for (std::size_t i = 0; i < l.n; ++i) acc -= l.rho2_block[a][i] * du.dx[i] * dv.dxi[a];
  }
  return acc;
}

/// d^{alpha beta} u with every component a genuine fractional partial.
inline FracCovector frac_differential(const GenPolynomial& u, std::size_t n, std::size_t m, FractionalOrder alpha,
                                      FractionalOrder beta) {
  FracCovector d;
  for (std::size_t i = 0; i < n; ++i) d.dx.push_back(frac_partial(u, base_var(i), alpha));
  for (std::size_t a = 0; a < m; ++a) d.dxi.push_back(frac_partial(u, fibre_var(a), beta));
  return d;
}

/// Differential of a coordinate function under the coordinate rule: the basis
/// covector itself.
inline FracCovector base_coordinate_differential(std::size_t n, std::size_t m, std::size_t i) {
  FracCovector d{std::vector<GenPolynomial>(n), std::vector<GenPolynomial>(m)};
  d.dx[i] = GenPolynomial::constant(1.0);
  return d;
}

inline FracCovector fibre_coordinate_differential(std::size_t n, std::size_t m, std::size_t a) {
  FracCovector d{std::vector<GenPolynomial>(n), std::vector<GenPolynomial>(m)};
  d.dxi[a] = GenPolynomial::constant(1.0);
  return d;
}

/// Differential of the fibre-linear lift of a section under the coordinate
/// rule: fibre components sigma^a, base components xi_b D^alpha_{x^i} sigma^b.
inline FracCovector fibre_linear_differential(const Section& s, std::size_t n, FractionalOrder alpha) {
  const std::size_t m = s.components.size();
  FracCovector d{std::vector<GenPolynomial>(n), s.components};
  for (std::size_t b = 0; b < m; ++b) {
    const auto g = frac_gradient(s.components[b], n, alpha);
    const auto xi = GenPolynomial::variable(fibre_var(b));
    for (std::size_t i = 0; i < n; ++i) d.dx[i] += xi * g[i];
  }
  return d;
}

/// Differential of a pulled-back base function.
inline FracCovector basic_differential(const GenPolynomial& f, std::size_t n, std::size_t m, FractionalOrder alpha) {
  return {frac_gradient(f, n, alpha), std::vector<GenPolynomial>(m)};
}

struct LinearityResult {
  bool linear = false;
  PolyTensor3 c;  // c[a][b][d], filled when linear
};

/// Lambda is linear iff every A-block entry equals C_ab^d(x) xi_d.
inline LinearityResult is_linear(const LambdaTensor& l) {
  LinearityResult r;
  r.c.assign(l.m, PolyMatrix(l.m, std::vector<GenPolynomial>(l.m)));
  for (std::size_t a = 0; a < l.m; ++a) {
    for (std::size_t b = 0; b < l.m; ++b) {
      for (const auto& [exps, coeff] : l.a_block[a][b].terms()) {
        std::optional<std::size_t> fibre;
        ExponentMap rest;
        for (const auto& [name, e] : exps) {
          if (name.rfind("xi", 0) == 0) {
            if (fibre || e != 1.0) return {false, {}};
            const auto idx = std::stoul(name.substr(2));
            if (idx < 1 || idx > l.m) return {false, {}};
            fibre = idx - 1;
          } else {
            rest.emplace(name, e);
          }
        }
        if (!fibre) return {false, {}};
        r.c[a][b][*fibre].add_term(coeff, std::move(rest));
      }
    }
  }
  r.linear = true;
  return r;
}

struct Theorem41Report {
  double bracket_residual = 0.0;  // i[s1,s2] vs [i s1, i s2]_Lambda
  double anchor1_residual = 0.0;  // rho1(s)(f) vs [i s, f]_Lambda
  double anchor2_residual = 0.0;  // rho2(s)(f) vs -[f, i s]_Lambda
  std::size_t points = 0;

  double max_residual() const { return std::max({bracket_residual, anchor1_residual, anchor2_residual}); }
};

/// Checks the algebroid/tensor correspondence at sample points of the dual
/// bundle. The left sides go through section_bracket and the anchors of
/// `s`; the right sides only through contractions of `l`.
///
/// The second anchor is tested as rho2(sigma)(f) = -[f, i sigma]_Lambda, the
/// sign carried by the rho2 block of Lambda (and by the anchored Leibniz rule).
inline Theorem41Report theorem41_check(const AlgebroidStructure& s, const LambdaTensor& l, const Section& s1,
                                       const Section& s2, const GenPolynomial& f, const std::vector<Point>& points,
                                       FractionalOrder alpha) {
  const std::size_t n = s.base_dim();
  const std::size_t m = s.fibre_dim();

  const GenPolynomial lhs_bracket = pair_with_fibre(section_bracket(s, s1, s2, alpha));
  const GenPolynomial rhs_bracket =
      lambda_bracket(l, fibre_linear_differential(s1, n, alpha), fibre_linear_differential(s2, n, alpha));

  const auto df = frac_gradient(f, n, alpha);
  const auto anchor_apply = [&](const PolyMatrix& rho, const Section& sec) {
    GenPolynomial acc;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t i = 0; i < n; ++i) acc += sec.components[a] * rho[a][i] * df[i];
    return acc;
  };
  const FracCovector dfb = basic_differential(f, n, m, alpha);

  Theorem41Report r;
  r.points = points.size();
  for (const Section* sec : {&s1, &s2}) {
    const auto d_sec = fibre_linear_differential(*sec, n, alpha);
    const GenPolynomial a1_lhs = anchor_apply(s.anchor1(), *sec);
    const GenPolynomial a1_rhs = lambda_bracket(l, d_sec, dfb);
    const GenPolynomial a2_lhs = anchor_apply(s.anchor2(), *sec);
    const GenPolynomial a2_rhs = -lambda_bracket(l, dfb, d_sec);
    for (const auto& p : points) {
      r.anchor1_residual = std::max(r.anchor1_residual, std::abs(a1_lhs.eval(p) - a1_rhs.eval(p)));
      r.anchor2_residual = std::max(r.anchor2_residual, std::abs(a2_lhs.eval(p) - a2_rhs.eval(p)));
    }
  }
  for (const auto& p : points) {
    r.bracket_residual = std::max(r.bracket_residual, std::abs(lhs_bracket.eval(p) - rhs_bracket.eval(p)));
  }
  return r;
}

/// Uniform random points of [lo, hi]^(n+m) over (x1..xn, xi1..xim).
inline std::vector<Point> sample_dual_points(std::size_t n, std::size_t m, std::size_t count, double lo, double hi,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<Point> pts;
  for (std::size_t k = 0; k < count; ++k) {
    Point p;
    for (std::size_t i = 0; i < n; ++i) p[base_var(i)] = u(rng);
    for (std::size_t a = 0; a < m; ++a) p[fibre_var(a)] = u(rng);
    pts.push_back(std::move(p));
  }
  return pts;
}

/// Mixed-order evolution on the dual bundle: x-equations of order alpha,
/// xi-equations of order beta.
struct MixedOrderSystem {
  std::size_t n = 0, m = 0;
  double alpha = 1.0, beta = 1.0;
  std::vector<GenPolynomial> rhs_x;   // D^alpha x^i
  std::vector<GenPolynomial> rhs_xi;  // D^beta xi_a
  std::vector<double> x0, xi0;
  std::string label;

  // Kept so the system can be reassembled with classical partials.
  std::optional<AlgebroidStructure> structure;
  GenPolynomial hamiltonian;

  std::vector<std::string> state_names() const {
    auto v = base_vars(n);
    for (const auto& s : fibre_vars(m)) v.push_back(s);
    return v;
  }
};

/// [xi_a, h]_Lambda = C_ab^d xi_d D^beta_{xi_b} h + rho1_a^i D^alpha_{x^i} h
/// [x^i, h]_Lambda  = -rho2_a^i D^beta_{xi_a} h
/// Both come from contracting Lambda = assemble_lambda(s) with coordinate
/// differentials and d^{alpha beta} h.
inline MixedOrderSystem dynamical_system(const AlgebroidStructure& s, const GenPolynomial& h, FractionalOrder alpha,
                                         FractionalOrder beta) {
  const std::size_t n = s.base_dim();
  const std::size_t m = s.fibre_dim();
  const LambdaTensor l = assemble_lambda(s);
  const FracCovector dh = frac_differential(h, n, m, alpha, beta);
  MixedOrderSystem sys;
  sys.n = n;
  sys.m = m;
  sys.alpha = alpha.value();
  sys.beta = beta.value();
  for (std::size_t i = 0; i < n; ++i) sys.rhs_x.push_back(lambda_bracket(l, base_coordinate_differential(n, m, i), dh));
  for (std::size_t a = 0; a < m; ++a)
    sys.rhs_xi.push_back(lambda_bracket(l, fibre_coordinate_differential(n, m, a), dh));
  sys.x0.assign(n, 1.0);
  sys.xi0.assign(m, 1.0);
  sys.structure = s;
  sys.hamiltonian = h;
  return sys;
}

namespace detail {

inline MixedOrderSystem opposed_anchor_form(const AlgebroidStructure& s, const GenPolynomial& h, FractionalOrder alpha,
                                            FractionalOrder beta) {
  const std::size_t n = s.base_dim();
  const std::size_t m = s.fibre_dim();
  MixedOrderSystem sys;
  sys.n = n;
  sys.m = m;
  sys.alpha = alpha.value();
  sys.beta = beta.value();
  std::vector<GenPolynomial> dxi_h, dx_h;
  for (std::size_t a = 0; a < m; ++a) dxi_h.push_back(frac_partial(h, fibre_var(a), beta));
  for (std::size_t i = 0; i < n; ++i) dx_h.push_back(frac_partial(h, base_var(i), alpha));
  for (std::size_t i = 0; i < n; ++i) {
    GenPolynomial acc;
    for (std::size_t a = 0; a < m; ++a) acc += s.rho1(a, i) * dxi_h[a];
    sys.rhs_x.push_back(std::move(acc));
  }
  for (std::size_t a = 0; a < m; ++a) {
    GenPolynomial acc;
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t d = 0; d < m; ++d) acc += s.c(a, b, d) * GenPolynomial::variable(fibre_var(d)) * dxi_h[b];
    for (std::size_t i = 0; i < n; ++i) acc += s.rho1(a, i) * dx_h[i];
    sys.rhs_xi.push_back(std::move(acc));
  }
  sys.x0.assign(n, 1.0);
  sys.xi0.assign(m, 1.0);
  return sys;
}

}  // namespace detail

/// Pre-Lie form: the x-equations written with rho1 in place of -rho2.
inline MixedOrderSystem pre_lie_system(const AlgebroidStructure& s, const GenPolynomial& h, FractionalOrder alpha,
                                       FractionalOrder beta) {
  if (!s.tags().pre_lie) throw StructureError("pre_lie_system needs a pre-Lie tagged structure");
  return detail::opposed_anchor_form(s, h, alpha, beta);
}

/// Symmetric form: same layout; valid for symmetric structures whose anchors
/// satisfy rho1 = -rho2.
inline MixedOrderSystem symmetric_system(const AlgebroidStructure& s, const GenPolynomial& h, FractionalOrder alpha,
                                         FractionalOrder beta) {
  if (!s.tags().symmetric) throw StructureError("symmetric_system needs a symmetric tagged structure");
  if (!s.anchors_opposed()) throw StructureError("symmetric_system needs rho1 = -rho2");
  return detail::opposed_anchor_form(s, h, alpha, beta);
}

enum class OrderLimit { alpha_to_one, beta_to_one };

/// Reassembles the system with classical partials in the chosen variables and
/// sets that order to 1. Initial data and label are kept.
inline MixedOrderSystem specialize_order(const MixedOrderSystem& sys, OrderLimit which) {
  if (!sys.structure) throw StructureError("specialize_order needs a system assembled from an algebroid structure");
  const double a = which == OrderLimit::alpha_to_one ? 1.0 : sys.alpha;
  const double b = which == OrderLimit::beta_to_one ? 1.0 : sys.beta;
  MixedOrderSystem out = dynamical_system(*sys.structure, sys.hamiltonian, FractionalOrder(a), FractionalOrder(b));
  out.x0 = sys.x0;
  out.xi0 = sys.xi0;
  out.label = sys.label;
  return out;
}

}  // namespace fraclei

#endif  // FRACLEI_ALGEBROID_HPP
