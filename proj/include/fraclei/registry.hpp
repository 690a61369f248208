#ifndef FRACLEI_REGISTRY_HPP
#define FRACLEI_REGISTRY_HPP

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fraclei/algebroid.hpp"
#include "fraclei/brackets.hpp"
#include "fraclei/expr.hpp"
#include "fraclei/fracsolve.hpp"
#include "fraclei/genpoly.hpp"
#include "fraclei/special.hpp"

namespace fraclei {

// Worked example data. Coefficient parameters are passed as polynomials so the
// same builders serve symbolic checks (parameters as variables) and numeric
// runs (parameters as constants).
namespace examples {

inline GenPolynomial x(std::size_t i, double e = 1.0) { return GenPolynomial::variable(base_var(i - 1), e); }
inline GenPolynomial xi(std::size_t a, double e = 1.0) { return GenPolynomial::variable(fibre_var(a - 1), e); }
inline GenPolynomial num(double c) { return GenPolynomial::constant(c); }

/// diag(k1, k2, k3) with k_i = s_i gamma_i.
inline TensorField2 gradient_tensor(const std::vector<GenPolynomial>& k) {
  PolyMatrix m(3, std::vector<GenPolynomial>(3));
  for (std::size_t i = 0; i < 3; ++i) m[i][i] = k[i];
  return TensorField2(std::move(m), Symmetry::symmetric);
}

inline GenPolynomial gradient_hamiltonian() { return x(1) * x(2) * x(3); }

inline GenPolynomial gradient_hamiltonian_alpha(double alpha) { return x(1, alpha) * x(2, alpha) * x(3, alpha); }

/// Skew rotation tensor of the metriplectic example.
inline TensorField2 metriplectic_p() {
  return TensorField2({{num(0), x(3), -x(2)}, {-x(3), num(0), x(1)}, {x(2), -x(1), num(0)}}, Symmetry::skew);
}

inline TensorField2 metriplectic_g(const std::vector<GenPolynomial>& a) {
  const auto sq = [](std::size_t i) { return x(i) * x(i); };
  PolyMatrix g(3, std::vector<GenPolynomial>(3));
  g[0][0] = -(a[1] * sq(2)) - a[2] * sq(3);
  g[1][1] = -(a[0] * sq(1)) - a[2] * sq(3);
  g[2][2] = -(a[0] * sq(1)) - a[1] * sq(2);
  g[0][1] = g[1][0] = a[0] * a[1] * x(1) * x(2);
  g[0][2] = g[2][0] = a[0] * a[2] * x(1) * x(3);
  g[1][2] = g[2][1] = a[1] * a[2] * x(2) * x(3);
  return TensorField2(std::move(g), Symmetry::symmetric);
}

/// h = sum (a_i + 1) (x^i)^alpha
inline GenPolynomial metriplectic_hamiltonian(const std::vector<GenPolynomial>& a, double alpha) {
  GenPolynomial h;
  for (std::size_t i = 0; i < 3; ++i) h += (a[i] + num(1)) * x(i + 1, alpha);
  return h;
}

inline TensorField2 maxwell_bloch_p() {
  return TensorField2({{num(0), num(1), num(0)}, {num(-1), num(0), x(1)}, {num(0), -x(1), num(0)}}, Symmetry::skew);
}

inline TensorField2 maxwell_bloch_g() {
  return TensorField2({{num(0), num(0), num(0)}, {num(0), -(x(3) * x(3)), num(0)}, {num(0), num(0), -(x(2) * x(2))}},
                      Symmetry::symmetric);
}

/// Potentials of the Maxwell-Bloch example. With `normalized` the (1+alpha)
/// powers are divided by 1+alpha, which makes their power-rule partials
/// Gamma(1+alpha) x^i, the partials the worked example lists. Without it the
/// potentials are taken as printed and the partials carry Gamma(2+alpha).
inline std::pair<GenPolynomial, GenPolynomial> maxwell_bloch_potentials(double alpha, bool normalized = true) {
  const double s = normalized ? 1.0 / (1.0 + alpha) : 1.0;
  GenPolynomial h1 = s * (x(2, 1.0 + alpha) + x(3, 1.0 + alpha));
  GenPolynomial h2 = s * x(1, 1.0 + alpha) + x(3, alpha);
  return {h1, h2};
}

/// Algebroid of the (alpha, beta) Maxwell-Bloch example on R^3 x R^3.
///
/// C_ab^d is read off the matrix P^beta = C_ab^d xi_d. rho1 is stored as
/// displayed (rows a, columns i). The rho2 display multiplies the D_xi h column
/// with rows indexed by i, so it is stored transposed.
inline AlgebroidStructure mb_algebroid_structure() {
  PolyTensor3 c(3, PolyMatrix(3, std::vector<GenPolynomial>(3)));
  c[0][1][2] = -x(3);
  c[0][2][1] = x(2);
  c[1][0][2] = x(3);
  c[1][2][0] = -x(1);
  c[2][0][1] = -x(2);
  c[2][1][0] = x(1);
  PolyMatrix rho1{{num(0), -x(3), x(2)}, {x(3), num(0), num(0)}, {-x(2), num(0), num(0)}};
  const PolyMatrix rho2_display{{num(0), num(-1), num(0)}, {num(1), num(0), -x(1)}, {num(0), x(1), num(0)}};
  PolyMatrix rho2(3, std::vector<GenPolynomial>(3));
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t i = 0; i < 3; ++i) rho2[a][i] = rho2_display[i][a];
  return {3, 3, std::move(c), std::move(rho1), std::move(rho2)};
}

/// The displayed P^beta matrix.
inline PolyMatrix mb_algebroid_p_beta() {
  return {{num(0), -(xi(3) * x(3)), xi(2) * x(2)},
          {xi(3) * x(3), num(0), -(xi(1) * x(1))},
          {-(xi(2) * x(2)), xi(1) * x(1), num(0)}};
}

inline GenPolynomial mb_algebroid_hamiltonian(double alpha, double beta) {
  return x(2, alpha) * xi(2, beta) + x(3, alpha) * xi(3, beta);
}

}  // namespace examples

/// A runnable system: state names, per-component orders and a polynomial
/// right-hand side.
struct BuiltSystem {
  std::string key;
  std::vector<std::string> state_names;
  std::vector<double> orders;
  std::vector<GenPolynomial> rhs;
  std::vector<double> y0;

  FractionalIVP ivp(double horizon) const {
    FractionalIVP p;
    p.orders = orders;
    p.rhs = polynomial_rhs(rhs, state_names);
    p.y0 = y0;
    p.horizon = horizon;
    return p;
  }
};

struct SystemParams {
  double alpha = 0.5;
  double beta = 0.5;
  bool paper_literal = false;
  std::map<std::string, double> extra;

  double get(const std::string& k, double fallback) const {
    auto it = extra.find(k);
    return it == extra.end() ? fallback : it->second;
  }
};

struct SystemRegistryEntry {
  std::string key;
  std::string description;
  std::string citation;
  std::size_t dim;
  bool uses_beta;
  std::map<std::string, double> default_extra;
  std::function<BuiltSystem(const SystemParams&)> build;
};

namespace detail {

inline BuiltSystem from_field(const std::string& key, const FracVectorField& f, double alpha) {
  BuiltSystem b;
  b.key = key;
  b.state_names = base_vars(f.dim());
  b.orders.assign(f.dim(), alpha);
  b.rhs = f.components;
  b.y0.assign(f.dim(), 1.0);
  return b;
}

inline BuiltSystem from_literal(const std::string& key, const std::vector<std::string>& exprs,
                                const SymbolTable& symbols, std::vector<std::string> names, std::vector<double> orders) {
  BuiltSystem b;
  b.key = key;
  for (const auto& e : exprs) b.rhs.push_back(parse_expression(e, symbols));
  b.state_names = std::move(names);
  b.orders = std::move(orders);
  b.y0.assign(b.orders.size(), 1.0);
  return b;
}

inline std::vector<GenPolynomial> constants(const std::vector<double>& v) {
  std::vector<GenPolynomial> out;
  for (double c : v) out.push_back(GenPolynomial::constant(c));
  return out;
}

}  // namespace detail

/// Displayed right-hand sides of the worked examples, transcribed verbatim as
/// expressions. Where a display disagrees with its own assembly rule the
/// transcription keeps the display (the algebroid list repeats the xi3
/// equation with both signs; the first occurrence is used).
namespace literal {

inline std::vector<std::string> gradient_eqs() {
  return {"K*k1*x2*x3*x1^(1-alpha)", "K*k2*x1*x3*x2^(1-alpha)", "K*k3*x1*x2*x3^(1-alpha)"};
}

inline std::vector<std::string> gradient_alpha_eqs() { return {"G*k1*x2*x3", "G*k2*x1*x3", "G*k3*x1*x2"}; }

inline std::vector<std::string> maxwell_bloch_eqs() { return {"G*x2", "G*x1*x3", "-G*x1*x2 - G*x2^2"}; }

inline std::vector<std::string> algebroid_mb_eqs() {
  return {
      "-Gb*x2^alpha",
      "-Gb*x1*x3^alpha",
      "Gb*x1*x3^alpha",
      "Gb*(-xi3*x2^alpha*x3 + xi2*x2*x3^alpha) + Ga*(-x3*xi2^beta + x2*xi3^beta)",
      "-Gb*xi1*x3^alpha",
      "-Gb*xi1*x2^alpha",
  };
}

inline SymbolTable symbols(double alpha, double beta, const std::map<std::string, double>& extra = {}) {
  SymbolTable s{{"alpha", alpha},
                {"beta", beta},
                {"G", gamma(1.0 + alpha)},
                {"Ga", gamma(1.0 + alpha)},
                {"Gb", gamma(1.0 + beta)},
                {"K", gamma(2.0) / gamma(2.0 - alpha)}};
  for (const auto& [k, v] : extra) s[k] = v;
  return s;
}

}  // namespace literal

inline const std::vector<SystemRegistryEntry>& system_registry() {
  using namespace examples;
  static const std::vector<SystemRegistryEntry> entries = {
      {"gradient-frac",
       "fractional gradient system, B = diag(k1,k2,k3), h = x1 x2 x3",
       "Eq. (28)",
       3,
       false,
       {{"k1", 0.1}, {"k2", 0.1}, {"k3", -0.2}},
       [](const SystemParams& p) {
         const std::vector<double> k{p.get("k1", 0.1), p.get("k2", 0.1), p.get("k3", -0.2)};
         if (p.paper_literal) {
           auto s = literal::symbols(p.alpha, p.beta, {{"k1", k[0]}, {"k2", k[1]}, {"k3", k[2]}});
           return detail::from_literal("gradient-frac", literal::gradient_eqs(), s, base_vars(3),
                                       std::vector<double>(3, p.alpha));
         }
         const auto f = hamiltonian_field(gradient_tensor(detail::constants(k)), gradient_hamiltonian(),
                                          FractionalOrder(p.alpha));
         return detail::from_field("gradient-frac", f, p.alpha);
       }},
      {"gradient-frac-alpha",
       "fractional gradient system, B = diag(k1,k2,k3), h = (x1 x2 x3)^alpha",
       "Eq. (29)",
       3,
       false,
       {{"k1", 0.1}, {"k2", 0.1}, {"k3", -0.2}},
       [](const SystemParams& p) {
         const std::vector<double> k{p.get("k1", 0.1), p.get("k2", 0.1), p.get("k3", -0.2)};
         if (p.paper_literal) {
           auto s = literal::symbols(p.alpha, p.beta, {{"k1", k[0]}, {"k2", k[1]}, {"k3", k[2]}});
           return detail::from_literal("gradient-frac-alpha", literal::gradient_alpha_eqs(), s, base_vars(3),
                                       std::vector<double>(3, p.alpha));
         }
         const auto f = hamiltonian_field(gradient_tensor(detail::constants(k)),
                                          gradient_hamiltonian_alpha(p.alpha), FractionalOrder(p.alpha));
         return detail::from_field("gradient-frac-alpha", f, p.alpha);
       }},
      {"metriplectic-frac",
       "fractional almost metric system, rotation P plus dissipative g(a1,a2,a3)",
       "Example 3.2",
       3,
       false,
       {{"a1", 1.0}, {"a2", 1.0}, {"a3", 1.0}},
       [](const SystemParams& p) {
         const auto a = detail::constants({p.get("a1", 1.0), p.get("a2", 1.0), p.get("a3", 1.0)});
         if (p.paper_literal) {
           // Gamma(1+alpha) (P + g) (a + 1)
           const auto pg = add(metriplectic_p().entries(), metriplectic_g(a).entries());
           FracVectorField f;
           for (std::size_t i = 0; i < 3; ++i) {
             GenPolynomial acc;
             for (std::size_t j = 0; j < 3; ++j) acc += pg[i][j] * (a[j] + num(1));
             f.components.push_back(gamma(1.0 + p.alpha) * acc);
           }
           return detail::from_field("metriplectic-frac", f, p.alpha);
         }
         const auto f = metriplectic_field(metriplectic_p(), metriplectic_g(a), metriplectic_hamiltonian(a, p.alpha),
                                           FractionalOrder(p.alpha));
         return detail::from_field("metriplectic-frac", f, p.alpha);
       }},
      {"maxwell-bloch-frac",
       "fractional Maxwell-Bloch equations, two-potential system (P, g, h1, h2)",
       "Eq. (35)",
       3,
       false,
       {},
       [](const SystemParams& p) {
         if (p.paper_literal) {
           return detail::from_literal("maxwell-bloch-frac", literal::maxwell_bloch_eqs(),
                                       literal::symbols(p.alpha, p.beta), base_vars(3),
                                       std::vector<double>(3, p.alpha));
         }
         const auto [h1, h2] = maxwell_bloch_potentials(p.alpha);
         const auto f = two_potential_field(maxwell_bloch_p(), maxwell_bloch_g(), h1, h2, FractionalOrder(p.alpha));
         return detail::from_field("maxwell-bloch-frac", f, p.alpha);
       }},
      {"algebroid-mb",
       "(alpha,beta) fractional Maxwell-Bloch system on the algebroid R^3 x R^3",
       "Eq. (54)",
       6,
       true,
       {},
       [](const SystemParams& p) {
         auto names = base_vars(3);
         for (const auto& s : fibre_vars(3)) names.push_back(s);
         std::vector<double> orders(3, p.alpha);
         orders.insert(orders.end(), 3, p.beta);
         if (p.paper_literal) {
           return detail::from_literal("algebroid-mb", literal::algebroid_mb_eqs(), literal::symbols(p.alpha, p.beta),
                                       names, orders);
         }
         const auto sys = dynamical_system(mb_algebroid_structure(), mb_algebroid_hamiltonian(p.alpha, p.beta),
                                           FractionalOrder(p.alpha), FractionalOrder(p.beta));
         BuiltSystem b;
         b.key = "algebroid-mb";
         b.state_names = names;
         b.orders = orders;
         b.rhs = sys.rhs_x;
         b.rhs.insert(b.rhs.end(), sys.rhs_xi.begin(), sys.rhs_xi.end());
         b.y0.assign(6, 1.0);
         return b;
       }},
  };
  return entries;
}

inline const SystemRegistryEntry& find_system(const std::string& key) {
  for (const auto& e : system_registry())
    if (e.key == key) return e;
  throw std::invalid_argument("unknown system '" + key + "'");
}

}  // namespace fraclei

#endif  // FRACLEI_REGISTRY_HPP
