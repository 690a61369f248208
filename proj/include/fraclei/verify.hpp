#ifndef FRACLEI_VERIFY_HPP
#define FRACLEI_VERIFY_HPP

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "fraclei/algebroid.hpp"
#include "fraclei/brackets.hpp"
#include "fraclei/expr.hpp"
#include "fraclei/fracfield.hpp"
#include "fraclei/fracsolve.hpp"
#include "fraclei/gloracle.hpp"
#include "fraclei/registry.hpp"

namespace fraclei {

inline std::uint64_t seed_from_env(std::uint64_t fallback = 42) {
  const char* s = std::getenv("FRACLEI_SEED");
  if (s == nullptr || *s == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (end == s || *end != '\0') throw std::invalid_argument(std::string("FRACLEI_SEED is not an integer: ") + s);
  return v;
}

// Seeded generators for property checks.
namespace gen {

class Source {
 public:
  explicit Source(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(integer(0, static_cast<int>(v.size()) - 1))];
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Nonzero polynomial in `vars` with small integer coefficients. Exponents are
/// 0 or at least 1, so every fractional partial of order <= 1 is defined.
inline GenPolynomial polynomial(Source& src, const std::vector<std::string>& vars, int max_terms = 3,
                                const std::vector<double>& exponents = {0.0, 1.0, 1.5, 2.0, 2.5}) {
  GenPolynomial p;
  while (p.is_zero()) {
    const int terms = src.integer(1, max_terms);
    for (int t = 0; t < terms; ++t) {
      ExponentMap e;
      for (const auto& v : vars) {
        const double x = src.pick(exponents);
        if (x != 0.0) e[v] = x;
      }
      int c = 0;
      while (c == 0) c = src.integer(-3, 3);
      p.add_term(c, std::move(e));
    }
  }
  return p;
}

inline PolyMatrix skew_matrix(Source& src, std::size_t n) {
  const auto vars = base_vars(n);
  PolyMatrix b(n, std::vector<GenPolynomial>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      b[i][j] = polynomial(src, vars, 2, {0.0, 1.0, 2.0});
      b[j][i] = -b[i][j];
    }
  return b;
}

/// Structure with C antisymmetric in (a, b) and rho2 = -rho1.
inline AlgebroidStructure pre_lie_structure(Source& src, std::size_t n, std::size_t m) {
  const auto vars = base_vars(n);
  PolyTensor3 c(m, PolyMatrix(m, std::vector<GenPolynomial>(m)));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b)
      for (std::size_t d = 0; d < m; ++d) {
        c[a][b][d] = polynomial(src, vars, 2, {0.0, 1.0, 2.0});
        c[b][a][d] = -c[a][b][d];
      }
  PolyMatrix rho1(m, std::vector<GenPolynomial>(n)), rho2(m, std::vector<GenPolynomial>(n));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t i = 0; i < n; ++i) {
      rho1[a][i] = polynomial(src, vars, 2, {0.0, 1.0, 2.0});
      rho2[a][i] = -rho1[a][i];
    }
  return {n, m, std::move(c), std::move(rho1), std::move(rho2), AlgebroidTags{.pre_lie = true}};
}

/// Structure with C symmetric in (a, b) and rho2 = -rho1.
inline AlgebroidStructure symmetric_structure(Source& src, std::size_t n, std::size_t m) {
  const auto vars = base_vars(n);
  PolyTensor3 c(m, PolyMatrix(m, std::vector<GenPolynomial>(m)));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b)
      for (std::size_t d = 0; d < m; ++d) {
        c[a][b][d] = polynomial(src, vars, 2, {0.0, 1.0, 2.0});
        c[b][a][d] = c[a][b][d];
      }
  PolyMatrix rho1(m, std::vector<GenPolynomial>(n)), rho2(m, std::vector<GenPolynomial>(n));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t i = 0; i < n; ++i) {
      rho1[a][i] = polynomial(src, vars, 2, {0.0, 1.0, 2.0});
      rho2[a][i] = -rho1[a][i];
    }
  return {n, m, std::move(c), std::move(rho1), std::move(rho2), AlgebroidTags{.symmetric = true}};
}

inline Section section(Source& src, std::size_t n, std::size_t m) {
  Section s;
  for (std::size_t a = 0; a < m; ++a) s.components.push_back(polynomial(src, base_vars(n), 2, {0.0, 1.0, 2.0}));
  return s;
}

}  // namespace gen

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::uint64_t seed = 42;
  std::vector<CheckResult> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["seed"] = seed;
    j["passed"] = all_passed();
    j["checks"] = nlohmann::json::array();
    for (const auto& c : checks) {
      j["checks"].push_back({{"suite", c.suite},
                             {"name", c.name},
                             {"passed", c.passed},
                             {"residual", c.residual},
                             {"tolerance", c.tolerance},
                             {"detail", c.detail}});
    }
    return j;
  }
};

namespace detail {

class Recorder {
 public:
  Recorder(std::string suite, VerifyReport& report) : suite_(std::move(suite)), report_(report) {}

  // residual <= tolerance passes
  void value(const std::string& name, double residual, double tolerance, std::string detail = {}) {
    report_.checks.push_back({suite_, name, std::isfinite(residual) && residual <= tolerance, residual, tolerance,
                              std::move(detail)});
  }

  void flag(const std::string& name, bool ok, std::string detail = {}) {
    report_.checks.push_back({suite_, name, ok, ok ? 0.0 : 1.0, 0.0, std::move(detail)});
  }

  /// Runs `body`; an exception becomes a failed check.
  void guarded(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      flag(name, false, std::string("exception: ") + e.what());
    }
  }

 private:
  std::string suite_;
  VerifyReport& report_;
};

inline double symbolic_residual(const GenPolynomial& a, const GenPolynomial& b) {
  const GenPolynomial d = a - b;
  const double scale = std::max({a.max_abs_coeff(), b.max_abs_coeff(), 1.0});
  return d.max_abs_coeff() / scale;
}

}  // namespace detail

/// Gamma(1+g) / Gamma(1+g-alpha) t^(g-alpha), the power rule evaluated directly
/// (also for g < alpha, where the result leaves the polynomial class).
inline double power_rule_value(double g, double alpha, double t) {
  return power_rule_coefficient(g, alpha) * std::pow(t, g - alpha);
}

/// D^alpha of t^g by the symbolic route when it is defined, otherwise by the
/// direct formula.
inline std::function<double(double)> symbolic_power_derivative(double g, double alpha) {
  if (g >= alpha) {
    const GenPolynomial d = frac_partial(GenPolynomial::variable("t", g), "t", FractionalOrder(alpha));
    return [d](double t) { return d.eval({{"t", t}}); };
  }
  return [g, alpha](double t) { return power_rule_value(g, alpha, t); };
}

/// Worst relative error of the Grunwald-Letnikov derivative of t^g against the
/// power rule on t in [0.5, 1].
inline double power_rule_vs_gl(double g, double alpha, double step) {
  const auto grid = gl::Grid1D::over(1.0, step);
  const auto f = gl::SampledFunction::sample(grid, [g](double t) { return std::pow(t, g); });
  const auto d = gl::gl_frac_derivative(f, FractionalOrder(alpha));
  return gl::max_relative_error(d, symbolic_power_derivative(g, alpha), 0.5);
}

/// Two-component test problem with the known solution (t^alpha, t^(2 alpha)):
///   D^alpha tau = Gamma(1+alpha)
///   D^alpha y   = Gamma(1+2 alpha) / Gamma(1+alpha) tau
inline FractionalIVP power_law_ivp(double alpha, double horizon = 1.0) {
  const double c1 = gamma(1.0 + alpha);
  const double c2 = gamma(1.0 + 2.0 * alpha) / gamma(1.0 + alpha);
  FractionalIVP ivp;
  ivp.orders = {alpha, alpha};
  ivp.rhs = [c1, c2](std::span<const double> y, std::span<double> dy) {
    dy[0] = c1;
    dy[1] = c2 * y[0];
  };
  ivp.y0 = {0.0, 0.0};
  ivp.horizon = horizon;
  return ivp;
}

inline ExactSolution power_law_exact(double alpha) {
  return [alpha](double t) { return std::vector<double>{std::pow(t, alpha), std::pow(t, 2.0 * alpha)}; };
}

/// D^alpha y = lambda y, y(0) = y0.
inline FractionalIVP relaxation_ivp(double alpha, double lambda, double y0, double horizon) {
  FractionalIVP ivp;
  ivp.orders = {alpha};
  ivp.rhs = [lambda](std::span<const double> y, std::span<double> dy) { dy[0] = lambda * y[0]; };
  ivp.y0 = {y0};
  ivp.horizon = horizon;
  return ivp;
}

inline FractionalIVP maxwell_bloch_ivp(double alpha, std::vector<double> y0, double horizon) {
  SystemParams p;
  p.alpha = alpha;
  auto b = find_system("maxwell-bloch-frac").build(p);
  b.y0 = std::move(y0);
  return b.ivp(horizon);
}

/// Expected right-hand sides of the gradient example with h = x1 x2 x3:
/// Gamma(2)/Gamma(2-alpha) k_i (x^i)^(1-alpha) prod_{j != i} x^j.
inline std::vector<GenPolynomial> gradient_expectation(double alpha, const std::vector<double>& k) {
  const auto s = literal::symbols(alpha, alpha, {{"k1", k[0]}, {"k2", k[1]}, {"k3", k[2]}});
  std::vector<GenPolynomial> out;
  for (const auto& e : literal::gradient_eqs()) out.push_back(parse_expression(e, s));
  return out;
}

/// Expected Maxwell-Bloch right-hand sides, built from the listed partials
/// D^alpha_{x2} h1 = G x2, D^alpha_{x3} h1 = G x3, D^alpha_{x1} h2 = G x1,
/// D^alpha_{x3} h2 = G with G = Gamma(1+alpha).
inline std::vector<GenPolynomial> maxwell_bloch_expectation(double alpha) {
  const auto s = literal::symbols(alpha, alpha);
  std::vector<GenPolynomial> out;
  for (const auto& e : literal::maxwell_bloch_eqs()) out.push_back(parse_expression(e, s));
  return out;
}

// ---------------------------------------------------------------------------
// Suites

inline void verify_rules(VerifyReport& rep) {
  detail::Recorder r("rules", rep);
  gen::Source src(rep.seed);

  r.guarded("gamma values", [&] {
    const double e = std::max({std::abs(gamma(1.0) - 1.0), std::abs(gamma(4.0) - 6.0),
                               std::abs(gamma(0.5) - std::sqrt(std::acos(-1.0)))});
    r.value("gamma values", e, 1e-12);
  });

  for (double g : {0.5, 1.0, 2.0, 2.5})
    for (double a : {0.3, 0.5, 0.8}) {
      const std::string name = "power rule vs GL, gamma=" + format_real(g) + " alpha=" + format_real(a);
      r.guarded(name, [&] { r.value(name, power_rule_vs_gl(g, a, 1e-3), 1e-2); });
    }

  r.guarded("constant derivative is zero", [&] {
    r.flag("constant derivative is zero",
           frac_partial(GenPolynomial::constant(5.0), "x1", FractionalOrder(0.3)).is_zero());
  });

  r.guarded("linearity", [&] {
    double worst = 0.0;
    const auto vars = base_vars(3);
    for (int t = 0; t < 50; ++t) {
      const auto p = gen::polynomial(src, vars);
      const auto q = gen::polynomial(src, vars);
      const double a = src.integer(-5, 5) / 2.0, b = src.integer(-5, 5) / 3.0;
      const FractionalOrder al(src.real(0.1, 1.0));
      const auto axis = src.pick(vars);
      worst = std::max(worst, detail::symbolic_residual(frac_partial(a * p + b * q, axis, al),
                                                        a * frac_partial(p, axis, al) + b * frac_partial(q, axis, al)));
    }
    r.value("linearity", worst, 1e-12);
  });

  r.guarded("classical limit", [&] {
    const auto vars = base_vars(2);
    bool ok = true;
    for (int t = 0; t < 20; ++t) {
      const auto p = gen::polynomial(src, vars, 3, {0.0, 1.0, 2.0, 3.0});
      const auto classical = classical_partial(p, "x1");
      const Point at{{"x1", src.real(0.5, 2.0)}, {"x2", src.real(0.5, 2.0)}};
      double prev = INFINITY;
      for (double a : {0.9, 0.99, 0.999}) {
        const double e = std::abs(frac_partial(p, "x1", a).eval(at) - classical.eval(at));
        if (e > 1e-12 && e >= prev) ok = false;
        prev = e;
      }
      if (!approx_equal(frac_partial(p, "x1", 1.0), classical)) ok = false;
    }
    r.flag("classical limit", ok);
  });

  r.guarded("product series exactness", [&] {
    double worst = 0.0;
    for (int t = 0; t < 30; ++t) {
      const auto f = gen::polynomial(src, {"x1", "x2"}, 1, {1.0, 1.5, 2.0});
      const auto h = gen::polynomial(src, {"x1", "x2"}, 3, {0.0, 1.0, 2.0, 3.0});
      const FractionalOrder al(src.real(0.1, 1.0));
      if (!f.depends_on("x1")) continue;
      const auto series = frac_product_series(f, h, "x1", al);
      worst = std::max(worst, detail::symbolic_residual(series.value, frac_partial(f * h, "x1", al)));
    }
    r.value("product series exactness", worst, 1e-12);
  });

  r.guarded("fractional Taylor round trip", [&] {
    double worst = 0.0;
    for (double a : {0.3, 0.5, 0.8}) {
      GenPolynomial f = 3.0 * GenPolynomial::variable("t", 2.0 * a) + GenPolynomial::variable("t", a) + GenPolynomial::constant(2.0);
      const auto c = fractional_taylor(f, FractionalOrder(a), 3);
      worst = std::max(worst, detail::symbolic_residual(fractional_taylor_sum(c, FractionalOrder(a), "t"), f));
    }
    r.value("fractional Taylor round trip", worst, 1e-12);
  });

  r.guarded("Mittag-Leffler order 1 is exp", [&] {
    double worst = 0.0;
    for (double z = -3.0; z <= 3.0; z += 0.25)
      worst = std::max(worst, std::abs(mittag_leffler(FractionalOrder(1.0), z) - std::exp(z)) / std::exp(z));
    r.value("Mittag-Leffler order 1 is exp", worst, 1e-10);
  });

  r.guarded("Mittag-Leffler order 1/2 closed form", [&] {
    double worst = 0.0;
    for (double z = -2.0; z <= 2.0; z += 0.25) {
      const double exact = std::exp(z * z) * std::erfc(-z);
      worst = std::max(worst, std::abs(mittag_leffler(FractionalOrder(0.5), z) - exact) / exact);
    }
    r.value("Mittag-Leffler order 1/2 closed form", worst, 1e-10);
  });
}

inline void verify_brackets(VerifyReport& rep) {
  using namespace examples;
  detail::Recorder r("brackets", rep);
  gen::Source src(rep.seed + 1);

  for (double a : {0.3, 0.5, 1.0}) {
    const std::string name = "gradient system table, alpha=" + format_real(a);
    r.guarded(name, [&] {
      const std::vector<double> k{0.1, 0.1, -0.2};
      const auto f = hamiltonian_field(gradient_tensor(detail::constants(k)), gradient_hamiltonian(),
                                       FractionalOrder(a));
      const auto expect = gradient_expectation(a, k);
      double worst = 0.0;
      for (std::size_t i = 0; i < 3; ++i)
        worst = std::max(worst, detail::symbolic_residual(f.components[i], expect[i]));
      r.value(name, worst, 1e-12);
    });
  }

  for (double a : {0.3, 0.5, 0.8, 1.0}) {
    const std::string name = "Maxwell-Bloch table, alpha=" + format_real(a);
    r.guarded(name, [&] {
      const auto [h1, h2] = maxwell_bloch_potentials(a);
      const auto f = two_potential_field(maxwell_bloch_p(), maxwell_bloch_g(), h1, h2, FractionalOrder(a));
      const auto expect = maxwell_bloch_expectation(a);
      double worst = 0.0;
      for (std::size_t i = 0; i < 3; ++i)
        worst = std::max(worst, detail::symbolic_residual(f.components[i], expect[i]));
      r.value(name, worst, 1e-12);
    });
  }

  for (double al : {0.5, 0.9}) {
    const std::string name = "metriplectic example, symbolic a, alpha=" + format_real(al);
    r.guarded(name, [&] {
      const std::vector<GenPolynomial> a{GenPolynomial::variable("a1"), GenPolynomial::variable("a2"),
                                         GenPolynomial::variable("a3")};
      const auto p = metriplectic_p();
      const auto g = metriplectic_g(a);
      const auto f = metriplectic_field(p, g, metriplectic_hamiltonian(a, al), FractionalOrder(al));
      const auto pg = add(p.entries(), g.entries());
      double worst = 0.0;
      for (std::size_t i = 0; i < 3; ++i) {
        GenPolynomial expect;
        for (std::size_t j = 0; j < 3; ++j) expect += pg[i][j] * (a[j] + num(1));
        worst = std::max(worst, detail::symbolic_residual(f.components[i], gamma(1.0 + al) * expect));
      }
      r.value(name, worst, 1e-12);
    });
  }

  r.guarded("skew antisymmetry and [f,f] = 0", [&] {
    double worst = 0.0;
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = static_cast<std::size_t>(src.integer(2, 3));
      const TensorField2 b(gen::skew_matrix(src, n), Symmetry::skew);
      const auto f = gen::polynomial(src, base_vars(n));
      const auto g = gen::polynomial(src, base_vars(n));
      const FractionalOrder al(src.real(0.1, 1.0));
      worst = std::max(worst, detail::symbolic_residual(leibniz_bracket(b, f, g, al), -leibniz_bracket(b, g, f, al)));
      worst = std::max(worst, detail::symbolic_residual(leibniz_bracket(b, f, f, al), GenPolynomial{}));
    }
    r.value("skew antisymmetry and [f,f] = 0", worst, 1e-12);
  });

  r.guarded("bilinearity", [&] {
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
      const TensorField2 b(gen::skew_matrix(src, 3));
      const auto f1 = gen::polynomial(src, base_vars(3));
      const auto f2 = gen::polynomial(src, base_vars(3));
      const auto g = gen::polynomial(src, base_vars(3));
      const FractionalOrder al(src.real(0.1, 1.0));
      const double c = src.integer(-4, 4);
      worst = std::max(worst, detail::symbolic_residual(leibniz_bracket(b, f1 + c * f2, g, al),
                                                        leibniz_bracket(b, f1, g, al) + c * leibniz_bracket(b, f2, g, al)));
    }
    r.value("bilinearity", worst, 1e-12);
  });

  r.guarded("product identity", [&] {
    double worst = 0.0;
    bool truncated = false;
    for (int t = 0; t < 30; ++t) {
      const TensorField2 b(gen::skew_matrix(src, 2));
      const auto f = gen::polynomial(src, {"x1", "x2"}, 1, {1.0, 1.5, 2.0});
      const auto h = gen::polynomial(src, {"x1", "x2"}, 2, {0.0, 1.0, 2.0});
      const auto g = gen::polynomial(src, {"x1", "x2"});
      const auto rpt = verify_product_identity(b, f, h, g, FractionalOrder(src.real(0.1, 1.0)));
      truncated = truncated || rpt.truncated;
      worst = std::max(worst, detail::symbolic_residual(rpt.lhs, rpt.rhs));
    }
    r.value("product identity", truncated ? INFINITY : worst, 1e-10);
  });

  r.guarded("Maxwell-Bloch P-term preserves h1 classically", [&] {
    const auto [h1, h2] = maxwell_bloch_potentials(1.0);
    const auto f = hamiltonian_field(maxwell_bloch_p(), h1, FractionalOrder(1.0));
    GenPolynomial acc;
    for (std::size_t i = 0; i < 3; ++i) acc += f.components[i] * classical_partial(h1, base_var(i));
    r.value("Maxwell-Bloch P-term preserves h1 classically", acc.max_abs_coeff(), 1e-12);
  });
}

inline void verify_algebroid(VerifyReport& rep) {
  using namespace examples;
  detail::Recorder r("algebroid", rep);
  gen::Source src(rep.seed + 2);
  const auto structure = mb_algebroid_structure();

  r.guarded("lambda A-block equals P^beta", [&] {
    const auto l = assemble_lambda(structure);
    const auto pb = mb_algebroid_p_beta();
    double worst = 0.0;
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b)
        worst = std::max(worst, detail::symbolic_residual(l.a_block[a][b], pb[a][b]));
    r.value("lambda A-block equals P^beta", worst, 0.0);
  });

  r.guarded("is_linear recovers C", [&] {
    const auto lin = is_linear(assemble_lambda(structure));
    bool ok = lin.linear;
    for (std::size_t a = 0; ok && a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b)
        for (std::size_t d = 0; d < 3; ++d)
          if (!(lin.c[a][b][d] == structure.c(a, b, d))) ok = false;
    r.flag("is_linear recovers C", ok);
  });

  const auto points = sample_dual_points(3, 3, 20, 0.5, 2.0, rep.seed);
  for (double al : {0.5, 0.8, 1.0}) {
    const std::string name = "correspondence at samples, e2/e3, alpha=" + format_real(al);
    r.guarded(name, [&] {
      const auto rpt = theorem41_check(structure, assemble_lambda(structure), Section::basis(3, 1),
                                       Section::basis(3, 2), examples::x(1), points, FractionalOrder(al));
      r.value(name, rpt.max_residual(), 1e-10);
    });
  }

  r.guarded("correspondence at samples, random sections", [&] {
    double worst = 0.0;
    for (int t = 0; t < 10; ++t) {
      const auto s1 = gen::section(src, 3, 3);
      const auto s2 = gen::section(src, 3, 3);
      const auto f = gen::polynomial(src, base_vars(3), 2, {0.0, 1.0, 2.0});
      const auto rpt = theorem41_check(structure, assemble_lambda(structure), s1, s2, f, points,
                                       FractionalOrder(src.real(0.2, 1.0)));
      worst = std::max(worst, rpt.max_residual());
    }
    r.value("correspondence at samples, random sections", worst, 1e-10);
  });

  r.guarded("pre-Lie form", [&] {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const auto s = gen::pre_lie_structure(src, 2, 3);
      auto vars = base_vars(2);
      for (const auto& v : fibre_vars(3)) vars.push_back(v);
      const auto h = gen::polynomial(src, vars);
      const FractionalOrder a(src.real(0.2, 1.0)), b(src.real(0.2, 1.0));
      const auto x = dynamical_system(s, h, a, b);
      const auto y = pre_lie_system(s, h, a, b);
      for (std::size_t i = 0; i < x.rhs_x.size(); ++i)
        worst = std::max(worst, detail::symbolic_residual(x.rhs_x[i], y.rhs_x[i]));
      for (std::size_t i = 0; i < x.rhs_xi.size(); ++i)
        worst = std::max(worst, detail::symbolic_residual(x.rhs_xi[i], y.rhs_xi[i]));
    }
    r.value("pre-Lie form", worst, 1e-12);
  });

  r.guarded("symmetric form", [&] {
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
      const auto s = gen::symmetric_structure(src, 2, 2);
      auto vars = base_vars(2);
      for (const auto& v : fibre_vars(2)) vars.push_back(v);
      const auto h = gen::polynomial(src, vars);
      const FractionalOrder a(src.real(0.2, 1.0)), b(src.real(0.2, 1.0));
      const auto x = dynamical_system(s, h, a, b);
      const auto y = symmetric_system(s, h, a, b);
      for (std::size_t i = 0; i < x.rhs_x.size(); ++i)
        worst = std::max(worst, detail::symbolic_residual(x.rhs_x[i], y.rhs_x[i]));
      for (std::size_t i = 0; i < x.rhs_xi.size(); ++i)
        worst = std::max(worst, detail::symbolic_residual(x.rhs_xi[i], y.rhs_xi[i]));
    }
    r.value("symmetric form", worst, 1e-12);
  });

  r.guarded("order specializations commute", [&] {
    const auto sys = dynamical_system(structure, mb_algebroid_hamiltonian(1.0, 1.0), FractionalOrder(0.6),
                                      FractionalOrder(0.7));
    const auto ab = specialize_order(specialize_order(sys, OrderLimit::alpha_to_one), OrderLimit::beta_to_one);
    const auto ba = specialize_order(specialize_order(sys, OrderLimit::beta_to_one), OrderLimit::alpha_to_one);
    bool ok = true;
    for (std::size_t i = 0; i < 3; ++i) ok = ok && ab.rhs_x[i] == ba.rhs_x[i] && ab.rhs_xi[i] == ba.rhs_xi[i];
    r.flag("order specializations commute", ok);
  });
}

inline void verify_solver(VerifyReport& rep) {
  detail::Recorder r("solver", rep);

  r.guarded("relaxation vs Mittag-Leffler", [&] {
    const auto tr = solve(relaxation_ivp(0.5, -1.0, 1.0, 1.0), SolverConfig{});
    const double e = sup_error(tr, [](double t) {
      return std::vector<double>{mittag_leffler(FractionalOrder(0.5), -std::sqrt(t))};
    });
    r.value("relaxation vs Mittag-Leffler", e, 1e-3);
  });

  r.guarded("power law solution", [&] {
    const auto tr = solve(power_law_ivp(0.5), SolverConfig{});
    r.value("power law solution", sup_error(tr, power_law_exact(0.5)), 5e-3);
  });

  r.guarded("classical Maxwell-Bloch vs RK4", [&] {
    const std::vector<double> y0{1.0, 0.5, 0.5};
    const auto ivp = maxwell_bloch_ivp(1.0, y0, 5.0);
    r.value("classical Maxwell-Bloch vs RK4", sup_distance(solve(ivp, SolverConfig{}), rk4_reference(ivp, 1e-3)),
            1e-3);
  });

  r.guarded("Maxwell-Bloch approaches classical", [&] {
    const std::vector<double> y0{1.0, 0.5, 0.5};
    const auto ref = rk4_reference(maxwell_bloch_ivp(1.0, y0, 5.0), 1e-3);
    std::vector<double> d;
    for (double a : {0.999, 0.99, 0.9}) d.push_back(sup_distance(solve(maxwell_bloch_ivp(a, y0, 5.0), {}), ref));
    r.flag("Maxwell-Bloch approaches classical", d[0] < d[1] && d[1] < d[2],
           format_real(d[0]) + " < " + format_real(d[1]) + " < " + format_real(d[2]));
  });

  for (double a : {0.3, 0.5, 0.8}) {
    const std::string name = "ABM observed order, alpha=" + format_real(a);
    r.guarded(name, [&] {
      SolverConfig cfg;
      cfg.step = 1.0 / 64;
      const auto rows = convergence_report(power_law_ivp(a), cfg, 4, power_law_exact(a), 0.5);
      double worst = INFINITY;
      for (std::size_t k = 1; k < rows.size(); ++k) worst = std::min(worst, rows[k].observed_order);
      // residual is the shortfall below order 1
      r.value(name, std::max(0.0, 1.0 - worst), 0.0, "min observed order " + format_real(worst));
    });
  }

  r.guarded("memory window soundness", [&] {
    SolverConfig a, b;
    a.step = b.step = 1e-2;
    b.memory_window = 1000;
    const auto ivp = maxwell_bloch_ivp(0.7, {1.0, 0.5, 0.5}, 1.0);
    r.flag("memory window soundness", solve(ivp, a).states == solve(ivp, b).states);
  });
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"rules", "brackets", "algebroid", "solver"};
  return names;
}

inline void run_suite(const std::string& name, VerifyReport& rep) {
  if (name == "rules") return verify_rules(rep);
  if (name == "brackets") return verify_brackets(rep);
  if (name == "algebroid") return verify_algebroid(rep);
  if (name == "solver") return verify_solver(rep);
  if (name == "all") {
    for (const auto& s : suite_names()) run_suite(s, rep);
    return;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace fraclei

#endif  // FRACLEI_VERIFY_HPP
