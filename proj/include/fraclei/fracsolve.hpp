#ifndef FRACLEI_FRACSOLVE_HPP
#define FRACLEI_FRACSOLVE_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fraclei/algebroid.hpp"
#include "fraclei/brackets.hpp"
#include "fraclei/errors.hpp"
#include "fraclei/genpoly.hpp"
#include "fraclei/special.hpp"

namespace fraclei {

using RhsFunction = std::function<void(std::span<const double> y, std::span<double> dy)>;

/// D^{q_i} y_i = F_i(y), y(0) = y0, on [0, horizon].
struct FractionalIVP {
  std::vector<double> orders;
  RhsFunction rhs;
  std::vector<double> y0;
  double horizon = 1.0;

  std::size_t dim() const noexcept { return y0.size(); }
};

enum class Method { abm_pece, frac_euler };

inline const char* to_string(Method m) { return m == Method::abm_pece ? "abmPece" : "fracEuler"; }

inline Method parse_method(const std::string& s) {
  if (s == "abmPece" || s == "abm") return Method::abm_pece;
  if (s == "fracEuler" || s == "euler") return Method::frac_euler;
  throw std::invalid_argument("unknown method '" + s + "' (expected abmPece or fracEuler)");
}

struct SolverConfig {
  double step = 1e-3;
  Method method = Method::abm_pece;
  int corrector_iterations = 1;
  // History length used in the convolution sums; unset means full history.
  std::optional<std::size_t> memory_window;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<double> orders;
  Method method = Method::abm_pece;
  double step = 0.0;

  const std::vector<double>& final_state() const { return states.back(); }
};

namespace detail {

inline void validate(const FractionalIVP& ivp, const SolverConfig& cfg) {
  if (ivp.orders.size() != ivp.dim()) throw std::invalid_argument("order vector length must equal state dimension");
  for (double q : ivp.orders)
    if (!(q > 0.0 && q <= 1.0)) throw DomainError("solver orders must lie in (0, 1]");
  if (!ivp.rhs) throw std::invalid_argument("missing right-hand side");
  if (!(cfg.step > 0.0) || !std::isfinite(cfg.step)) throw std::invalid_argument("step must be positive");
  if (!(ivp.horizon > 0.0) || cfg.step > ivp.horizon * (1.0 + 1e-12)) {
    throw std::invalid_argument("step/horizon mismatch: step must not exceed the horizon");
  }
  if (cfg.corrector_iterations < 1) throw std::invalid_argument("corrector_iterations must be at least 1");
  if (cfg.memory_window && *cfg.memory_window == 0) throw std::invalid_argument("memory window must be positive");
}

inline std::size_t step_count(double horizon, double step) {
  const double ratio = horizon / step;
  const double r = std::round(ratio);
  if (std::abs(ratio - r) <= 1e-9 * std::max(1.0, ratio)) return static_cast<std::size_t>(r);
  return static_cast<std::size_t>(std::ceil(ratio));
}

inline void eval_rhs(const FractionalIVP& ivp, std::span<const double> y, std::span<double> out, long step) {
  try {
    ivp.rhs(y, out);
  } catch (const DomainError& e) {
    throw SolverError(std::string("right-hand side left its domain: ") + e.what(), step);
  }
  for (double v : out)
    if (!std::isfinite(v)) throw SolverError("non-finite right-hand side", step);
}

inline void check_finite(std::span<const double> y, long step) {
  for (double v : y)
    if (!std::isfinite(v)) throw SolverError("non-finite state", step);
}

// Product-integration weights of the fractional Adams method for one order.
struct AbmWeights {
  double q;
  double pred_scale;  // h^q / Gamma(q + 1)
  double corr_scale;  // h^q / Gamma(q + 2)
  std::vector<double> pred;  // (k+1)^q - k^q
  std::vector<double> corr;  // (k+2)^(q+1) - 2(k+1)^(q+1) + k^(q+1)
  std::vector<double> pow_q1;  // k^(q+1)
  std::vector<double> pow_q;   // k^q

  AbmWeights(double order, double h, std::size_t n) : q(order) {
    pred_scale = std::pow(h, q) / std::tgamma(q + 1.0);
    corr_scale = std::pow(h, q) / std::tgamma(q + 2.0);
    pow_q.resize(n + 2);
    pow_q1.resize(n + 3);
    for (std::size_t k = 0; k < pow_q.size(); ++k) pow_q[k] = std::pow(static_cast<double>(k), q);
    for (std::size_t k = 0; k < pow_q1.size(); ++k) pow_q1[k] = std::pow(static_cast<double>(k), q + 1.0);
    pred.resize(n + 1);
    corr.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      pred[k] = pow_q[k + 1] - pow_q[k];
      corr[k] = pow_q1[k + 2] - 2.0 * pow_q1[k + 1] + pow_q1[k];
    }
  }

  // a_{0,n+1} = n^(q+1) - (n - q)(n + 1)^q
  double corr_start(std::size_t n) const { return pow_q1[n] - (static_cast<double>(n) - q) * pow_q[n + 1]; }
};

}  // namespace detail

/// Fixed-step solver for D^{q_i} y_i = F_i(y) with the Caputo-type reading of
/// the modified derivative (initial values enter as y0).
///
/// abmPece is the fractional Adams-Bashforth-Moulton predictor-corrector with
/// per-component product-integration weights; fracEuler is the explicit
/// Grunwald-Letnikov rule y_n = y0 + h^q F(y_{n-1}) - sum_{k>=1} w_k (y_{n-k} - y0).
inline Trajectory solve(const FractionalIVP& ivp, const SolverConfig& cfg) {
  detail::validate(ivp, cfg);
  const std::size_t d = ivp.dim();
  const std::size_t steps = detail::step_count(ivp.horizon, cfg.step);
  const double h = cfg.step;

  Trajectory tr;
  tr.orders = ivp.orders;
  tr.method = cfg.method;
  tr.step = h;
  tr.times.reserve(steps + 1);
  tr.states.reserve(steps + 1);
  tr.times.push_back(0.0);
  tr.states.push_back(ivp.y0);
  detail::check_finite(ivp.y0, 0);

  // Distinct orders share weights.
  std::vector<std::size_t> order_slot(d);
  std::vector<double> distinct;
  for (std::size_t i = 0; i < d; ++i) {
    auto it = std::find(distinct.begin(), distinct.end(), ivp.orders[i]);
    if (it == distinct.end()) {
      order_slot[i] = distinct.size();
      distinct.push_back(ivp.orders[i]);
    } else {
      order_slot[i] = static_cast<std::size_t>(it - distinct.begin());
    }
  }

  const auto window_start = [&](std::size_t n) -> std::size_t {
    if (!cfg.memory_window || *cfg.memory_window > n) return 0;
    return n + 1 - *cfg.memory_window;
  };

  if (cfg.method == Method::abm_pece) {
    std::vector<detail::AbmWeights> weights;
    for (double q : distinct) weights.emplace_back(q, h, steps);

    std::vector<std::vector<double>> f;  // f_j = F(y_j)
    f.reserve(steps + 1);
    f.emplace_back(d);
    detail::eval_rhs(ivp, ivp.y0, f[0], 0);

    std::vector<double> pred(d), corr(d), hist(d), fp(d);
    for (std::size_t n = 0; n < steps; ++n) {
      const long idx = static_cast<long>(n + 1);
      const std::size_t j0 = window_start(n);
      for (std::size_t i = 0; i < d; ++i) {
        const auto& w = weights[order_slot[i]];
        double sp = 0.0, sc = 0.0;
        for (std::size_t j = j0; j <= n; ++j) {
          sp += w.pred[n - j] * f[j][i];
          if (j == 0) {
            sc += w.corr_start(n) * f[0][i];
          } else {
            sc += w.corr[n - j] * f[j][i];
          }
        }
        pred[i] = ivp.y0[i] + w.pred_scale * sp;
        hist[i] = sc;
      }
      detail::check_finite(pred, idx);
      std::vector<double>* current = &pred;
      for (int it = 0; it < cfg.corrector_iterations; ++it) {
        detail::eval_rhs(ivp, *current, fp, idx);
        for (std::size_t i = 0; i < d; ++i) {
          const auto& w = weights[order_slot[i]];
          corr[i] = ivp.y0[i] + w.corr_scale * (fp[i] + hist[i]);
        }
        current = &corr;
      }
      detail::check_finite(corr, idx);
      tr.times.push_back(static_cast<double>(n + 1) * h);
      tr.states.push_back(corr);
      f.emplace_back(d);
      detail::eval_rhs(ivp, corr, f.back(), idx);
    }
    return tr;
  }

  // fracEuler
  std::vector<std::vector<double>> gw;
  std::vector<double> hq;
  for (double q : distinct) {
    std::vector<double> w(steps + 1);
    w[0] = 1.0;
    for (std::size_t k = 1; k <= steps; ++k) w[k] = w[k - 1] * (1.0 - (q + 1.0) / static_cast<double>(k));
    gw.push_back(std::move(w));
    hq.push_back(std::pow(h, q));
  }
  std::vector<double> fprev(d), next(d);
  for (std::size_t n = 1; n <= steps; ++n) {
    const long idx = static_cast<long>(n);
    detail::eval_rhs(ivp, tr.states[n - 1], fprev, idx);
    // Window counts history samples y_{n-1}, y_{n-2}, ...
    const std::size_t kmax = (!cfg.memory_window || *cfg.memory_window >= n) ? n : *cfg.memory_window;
    for (std::size_t i = 0; i < d; ++i) {
      const auto& w = gw[order_slot[i]];
      double acc = 0.0;
      for (std::size_t k = 1; k <= kmax; ++k) acc += w[k] * (tr.states[n - k][i] - ivp.y0[i]);
      next[i] = ivp.y0[i] + hq[order_slot[i]] * fprev[i] - acc;
    }
    detail::check_finite(next, idx);
    tr.times.push_back(static_cast<double>(n) * h);
    tr.states.push_back(next);
  }
  return tr;
}

/// Classical fourth-order Runge-Kutta; every order must be 1.
inline Trajectory rk4_reference(const FractionalIVP& ivp, double step) {
  for (double q : ivp.orders)
    if (q != 1.0) throw DomainError("rk4_reference needs all orders equal to 1");
  SolverConfig cfg;
  cfg.step = step;
  detail::validate(ivp, cfg);
  const std::size_t d = ivp.dim();
  const std::size_t steps = detail::step_count(ivp.horizon, step);
  Trajectory tr;
  tr.orders = ivp.orders;
  tr.step = step;
  tr.times.push_back(0.0);
  tr.states.push_back(ivp.y0);
  std::vector<double> y = ivp.y0, k1(d), k2(d), k3(d), k4(d), tmp(d);
  for (std::size_t n = 1; n <= steps; ++n) {
    const long idx = static_cast<long>(n);
    detail::eval_rhs(ivp, y, k1, idx);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + 0.5 * step * k1[i];
    detail::eval_rhs(ivp, tmp, k2, idx);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + 0.5 * step * k2[i];
    detail::eval_rhs(ivp, tmp, k3, idx);
    for (std::size_t i = 0; i < d; ++i) tmp[i] = y[i] + step * k3[i];
    detail::eval_rhs(ivp, tmp, k4, idx);
    for (std::size_t i = 0; i < d; ++i) y[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    detail::check_finite(y, idx);
    tr.times.push_back(static_cast<double>(n) * step);
    tr.states.push_back(y);
  }
  return tr;
}

/// Sup-norm distance over samples present in both trajectories (one step size
/// must be an integer multiple of the other), restricted to t >= from.
inline double sup_distance(const Trajectory& a, const Trajectory& b, double from = 0.0) {
  const Trajectory& coarse = a.step >= b.step ? a : b;
  const Trajectory& fine = a.step >= b.step ? b : a;
  const auto stride = static_cast<std::size_t>(std::llround(coarse.step / fine.step));
  double worst = 0.0;
  for (std::size_t k = 0; k < coarse.states.size() && k * stride < fine.states.size(); ++k) {
    if (coarse.times[k] + 1e-12 < from) continue;
    for (std::size_t i = 0; i < coarse.states[k].size(); ++i)
      worst = std::max(worst, std::abs(coarse.states[k][i] - fine.states[k * stride][i]));
  }
  return worst;
}

using ExactSolution = std::function<std::vector<double>(double)>;

inline double sup_error(const Trajectory& tr, const ExactSolution& exact, double from = 0.0) {
  double worst = 0.0;
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    if (tr.times[k] + 1e-12 < from) continue;
    const auto e = exact(tr.times[k]);
    for (std::size_t i = 0; i < e.size(); ++i) worst = std::max(worst, std::abs(tr.states[k][i] - e[i]));
  }
  return worst;
}

struct ConvergenceRow {
  double step;
  double error;
  double observed_order;  // NaN on the first row
};

/// Runs the solver at step, step/2, ..., step/2^refinements and reports the sup
/// error (against `exact` if given, else against the finest run) and the
/// observed order log2(e_h / e_{h/2}). Errors are taken on t >= from; a
/// positive `from` keeps a nonsmooth start (t^alpha behaviour at 0) from
/// masking the order away from it.
inline std::vector<ConvergenceRow> convergence_report(const FractionalIVP& ivp, const SolverConfig& cfg,
                                                      int refinements, const ExactSolution& exact = {},
                                                      double from = 0.0) {
  if (refinements < 2) throw std::invalid_argument("convergence_report needs at least 2 refinements");
  std::vector<Trajectory> runs;
  SolverConfig c = cfg;
  for (int r = 0; r <= refinements; ++r) {
    runs.push_back(solve(ivp, c));
    c.step *= 0.5;
  }
  std::vector<ConvergenceRow> rows;
  const std::size_t usable = exact ? runs.size() : runs.size() - 1;
  for (std::size_t r = 0; r < usable; ++r) {
    const double err = exact ? sup_error(runs[r], exact, from) : sup_distance(runs[r], runs.back(), from);
    double p = std::numeric_limits<double>::quiet_NaN();
    if (!rows.empty()) p = std::log2(rows.back().error / err);
    rows.push_back({runs[r].step, err, p});
  }
  return rows;
}

/// Compiles a polynomial right-hand side over the given state variable names.
inline RhsFunction polynomial_rhs(const std::vector<GenPolynomial>& components, const std::vector<std::string>& names) {
  std::vector<CompiledPolynomial> compiled;
  for (const auto& p : components) compiled.emplace_back(p, names);
  return [compiled = std::move(compiled)](std::span<const double> y, std::span<double> dy) {
    for (std::size_t i = 0; i < compiled.size(); ++i) dy[i] = compiled[i](y);
  };
}

inline FractionalIVP to_ivp(const FractionalSystemSpec& spec, std::vector<double> y0, double horizon) {
  FractionalIVP ivp;
  ivp.orders.assign(spec.dim, spec.alpha);
  ivp.rhs = polynomial_rhs(spec.rhs.components, base_vars(spec.dim));
  ivp.y0 = std::move(y0);
  ivp.horizon = horizon;
  return ivp;
}

/// State (x1..xn, xi1..xim) with orders (alpha..alpha, beta..beta).
inline FractionalIVP to_ivp(const MixedOrderSystem& sys, double horizon) {
  FractionalIVP ivp;
  ivp.orders.assign(sys.n, sys.alpha);
  ivp.orders.insert(ivp.orders.end(), sys.m, sys.beta);
  std::vector<GenPolynomial> rhs = sys.rhs_x;
  rhs.insert(rhs.end(), sys.rhs_xi.begin(), sys.rhs_xi.end());
  ivp.rhs = polynomial_rhs(rhs, sys.state_names());
  ivp.y0 = sys.x0;
  ivp.y0.insert(ivp.y0.end(), sys.xi0.begin(), sys.xi0.end());
  ivp.horizon = horizon;
  return ivp;
}

inline Trajectory solve_mixed(const MixedOrderSystem& sys, const SolverConfig& cfg, double horizon) {
  return solve(to_ivp(sys, horizon), cfg);
}

/// Header t,y1,...,yd; 17 significant digits.
inline void write_trajectory_csv(const Trajectory& tr, std::ostream& os) {
  const std::size_t d = tr.states.empty() ? 0 : tr.states.front().size();
  os << 't';
  for (std::size_t i = 0; i < d; ++i) os << ",y" << (i + 1);
  os << '\n';
  char buf[32];
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", tr.times[k]);
    os << buf;
    for (double v : tr.states[k]) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      os << ',' << buf;
    }
    os << '\n';
  }
}

}  // namespace fraclei

#endif  // FRACLEI_FRACSOLVE_HPP
