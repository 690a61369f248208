#ifndef FRACLEI_GENPOLY_HPP
#define FRACLEI_GENPOLY_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fraclei/errors.hpp"

namespace fraclei {

// Exponents live on a 1e-12 grid so that sums like (1 + alpha) - alpha merge
// with the literal 1 regardless of rounding in the arithmetic that produced them.
inline double quantize_exponent(double e) {
  const double q = std::round(e * 1e12) / 1e12;
  return q == 0.0 ? 0.0 : q;
}

inline bool is_integral(double e) { return e == std::floor(e); }

/// Variable name -> nonnegative real exponent. Zero exponents are never stored.
using ExponentMap = std::map<std::string, double>;

using Point = std::map<std::string, double>;

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the shortest representation that round-trips.
  for (int prec = 1; prec <= 17; ++prec) {
    char probe[40];
    std::snprintf(probe, sizeof probe, "%.*g", prec, v);
    if (std::strtod(probe, nullptr) == v) return probe;
  }
  return buf;
}

/// Finite sum of real-coefficient monomials with real nonnegative exponents.
///
/// Terms are kept in a map keyed by exponent map, so the representation is
/// canonical: like terms merge on insertion, zero coefficients are dropped and
/// iteration order is lexicographic in the exponent maps.
class GenPolynomial {
 public:
  using TermMap = std::map<ExponentMap, double>;

  GenPolynomial() = default;

  static GenPolynomial constant(double c) {
    GenPolynomial p;
    p.add_term(c, {});
    return p;
  }

  static GenPolynomial variable(const std::string& name, double exponent = 1.0) {
    GenPolynomial p;
    p.add_term(1.0, {{name, exponent}});
    return p;
  }

  static GenPolynomial monomial(double coeff, ExponentMap exps) {
    GenPolynomial p;
    p.add_term(coeff, std::move(exps));
    return p;
  }

  void add_term(double coeff, ExponentMap exps) {
    if (coeff == 0.0) return;
    ExponentMap clean;
    for (const auto& [name, e] : exps) {
      const double q = quantize_exponent(e);
      if (q < 0.0) throw DomainError("negative exponent on " + name);
      if (q != 0.0) clean.emplace(name, q);
    }
    auto [it, inserted] = terms_.try_emplace(std::move(clean), coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0.0) terms_.erase(it);
    }
  }

  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }

  double constant_term() const {
    auto it = terms_.find(ExponentMap{});
    return it == terms_.end() ? 0.0 : it->second;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [_, c] : terms_) m = std::max(m, std::abs(c));
    return m;
  }

  std::set<std::string> variables() const {
    std::set<std::string> out;
    for (const auto& [exps, _] : terms_)
      for (const auto& [name, _e] : exps) out.insert(name);
    return out;
  }

  bool depends_on(const std::string& name) const {
    for (const auto& [exps, _] : terms_)
      if (exps.count(name)) return true;
    return false;
  }

  // True when every exponent on `name` is a nonnegative integer.
  bool integral_in(const std::string& name) const {
    for (const auto& [exps, _] : terms_) {
      auto it = exps.find(name);
      if (it != exps.end() && !is_integral(it->second)) return false;
    }
    return true;
  }

  GenPolynomial& operator+=(const GenPolynomial& o) {
    for (const auto& [exps, c] : o.terms_) add_term(c, exps);
    return *this;
  }

  GenPolynomial& operator-=(const GenPolynomial& o) {
    for (const auto& [exps, c] : o.terms_) add_term(-c, exps);
    return *this;
  }

  GenPolynomial& operator*=(double s) {
    if (s == 0.0) {
      terms_.clear();
      return *this;
    }
    for (auto& [_, c] : terms_) c *= s;
    return *this;
  }

  friend GenPolynomial operator+(GenPolynomial a, const GenPolynomial& b) { return a += b; }
  friend GenPolynomial operator-(GenPolynomial a, const GenPolynomial& b) { return a -= b; }
  friend GenPolynomial operator*(GenPolynomial a, double s) { return a *= s; }
  friend GenPolynomial operator*(double s, GenPolynomial a) { return a *= s; }
  friend GenPolynomial operator-(GenPolynomial a) { return a *= -1.0; }

  friend GenPolynomial operator*(const GenPolynomial& a, const GenPolynomial& b) {
    GenPolynomial r;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        ExponentMap e = ea;
        for (const auto& [name, x] : eb) e[name] += x;
        r.add_term(ca * cb, std::move(e));
      }
    }
    return r;
  }

  friend bool operator==(const GenPolynomial& a, const GenPolynomial& b) { return a.terms_ == b.terms_; }

  /// Replace a variable by a numeric value. Negative values are only allowed
  /// under integer exponents.
  GenPolynomial substitute(const std::string& name, double value) const {
    GenPolynomial r;
    for (const auto& [exps, c] : terms_) {
      auto it = exps.find(name);
      if (it == exps.end()) {
        r.add_term(c, exps);
        continue;
      }
      ExponentMap rest = exps;
      rest.erase(name);
      r.add_term(c * power(value, it->second, name), std::move(rest));
    }
    return r;
  }

  double eval(const Point& at) const {
    double sum = 0.0;
    for (const auto& [exps, c] : terms_) {
      double v = c;
      for (const auto& [name, e] : exps) {
        auto it = at.find(name);
        if (it == at.end()) throw DomainError("unbound variable " + name);
        v *= power(it->second, e, name);
      }
      sum += v;
    }
    return sum;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [exps, c] : terms_) {
      double mag = c;
      if (first) {
        if (c < 0) {
          out += "-";
          mag = -c;
        }
      } else {
        out += c < 0 ? " - " : " + ";
        mag = std::abs(c);
      }
      first = false;
      std::string body;
      for (const auto& [name, e] : exps) {
        if (!body.empty()) body += "*";
        body += name;
        if (e != 1.0) body += "^" + format_real(e);
      }
      if (body.empty()) {
        out += format_real(mag);
      } else if (mag == 1.0) {
        out += body;
      } else {
        out += format_real(mag) + "*" + body;
      }
    }
    return out;
  }

  static double power(double base, double e, const std::string& name) {
    if (e == 0.0) return 1.0;
    if (base < 0.0 && !is_integral(e)) {
      throw DomainError("negative value for " + name + " under non-integer exponent " + format_real(e));
    }
    if (e == 1.0) return base;
    return std::pow(base, e);
  }

 private:
  TermMap terms_;
};

/// Equality up to coefficient rounding: same support after dropping terms whose
/// coefficient is below rel_tol * max(1, largest coefficient).
inline bool approx_equal(const GenPolynomial& a, const GenPolynomial& b, double rel_tol = 1e-12) {
  const double scale = std::max({1.0, a.max_abs_coeff(), b.max_abs_coeff()});
  const GenPolynomial d = a - b;
  for (const auto& [_, c] : d.terms()) {
    if (std::abs(c) > rel_tol * scale) return false;
  }
  return true;
}

inline bool approx_zero(const GenPolynomial& a, double rel_tol = 1e-12) {
  return approx_equal(a, GenPolynomial{}, rel_tol);
}

/// Drops terms with |coeff| <= abs_tol.
inline GenPolynomial prune(const GenPolynomial& p, double abs_tol) {
  GenPolynomial r;
  for (const auto& [exps, c] : p.terms())
    if (std::abs(c) > abs_tol) r.add_term(c, exps);
  return r;
}

/// Polynomial bound to a fixed variable ordering for repeated numeric evaluation.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;

  CompiledPolynomial(const GenPolynomial& p, std::span<const std::string> vars) {
    for (const auto& [exps, c] : p.terms()) {
      Term t{c, {}};
      for (const auto& [name, e] : exps) {
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end()) throw DomainError("unbound variable " + name);
        t.factors.push_back({static_cast<std::size_t>(it - vars.begin()), e, is_integral(e)});
      }
      terms_.push_back(std::move(t));
    }
    names_.assign(vars.begin(), vars.end());
  }

  double operator()(std::span<const double> x) const {
    double sum = 0.0;
    for (const auto& t : terms_) {
      double v = t.coeff;
      for (const auto& f : t.factors) {
        const double b = x[f.index];
        if (f.exponent == 1.0) {
          v *= b;
        } else if (f.integral) {
          v *= int_pow(b, static_cast<int>(f.exponent));
        } else {
          if (b < 0.0) {
            throw DomainError("negative value for " + names_[f.index] + " under non-integer exponent");
          }
          v *= std::pow(b, f.exponent);
        }
      }
      sum += v;
    }
    return sum;
  }

 private:
  struct Factor {
    std::size_t index;
    double exponent;
    bool integral;
  };
  struct Term {
    double coeff;
    std::vector<Factor> factors;
  };

  static double int_pow(double b, int n) {
    double r = 1.0;
    while (n > 0) {
      if (n & 1) r *= b;
      b *= b;
      n >>= 1;
    }
    return r;
  }

  std::vector<Term> terms_;
  std::vector<std::string> names_;
};

/// x1..xn
inline std::string base_var(std::size_t i) { return "x" + std::to_string(i + 1); }
/// xi1..xim
inline std::string fibre_var(std::size_t a) { return "xi" + std::to_string(a + 1); }

inline std::vector<std::string> base_vars(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(base_var(i));
  return v;
}

inline std::vector<std::string> fibre_vars(std::size_t m) {
  std::vector<std::string> v;
  for (std::size_t a = 0; a < m; ++a) v.push_back(fibre_var(a));
  return v;
}

}  // namespace fraclei

#endif  // FRACLEI_GENPOLY_HPP
