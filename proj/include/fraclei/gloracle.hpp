#ifndef FRACLEI_GLORACLE_HPP
#define FRACLEI_GLORACLE_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "fraclei/errors.hpp"
#include "fraclei/special.hpp"

namespace fraclei::gl {

/// Uniform grid t_k = k * step, k = 0..count-1.
struct Grid1D {
  double step;
  std::size_t count;

  Grid1D(double step_, std::size_t count_) : step(step_), count(count_) {
    if (!(step > 0.0)) throw DomainError("grid step must be positive");
    if (count < 2) throw DomainError("grid needs at least two points");
  }

  static Grid1D over(double horizon, double step) {
    return Grid1D(step, static_cast<std::size_t>(std::llround(horizon / step)) + 1);
  }

  double horizon() const { return step * static_cast<double>(count - 1); }
  double at(std::size_t k) const { return step * static_cast<double>(k); }
};

struct SampledFunction {
  Grid1D grid;
  std::vector<double> values;

  SampledFunction(Grid1D g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.count) throw DomainError("sample count does not match grid");
    for (double x : values)
      if (!std::isfinite(x)) throw DomainError("sampled values must be finite");
  }

  static SampledFunction sample(Grid1D g, const std::function<double(double)>& f) {
    std::vector<double> v(g.count);
    for (std::size_t k = 0; k < g.count; ++k) v[k] = f(g.at(k));
    return {g, std::move(v)};
  }
};

/// Grunwald-Letnikov weights w_k = (-1)^k C(alpha, k) by the recurrence
/// w_0 = 1, w_k = w_{k-1} (1 - (alpha + 1) / k).
inline std::vector<double> gl_weights(double alpha, std::size_t n) {
  if (n == 0) throw DomainError("gl_weights: n must be at least 1");
  std::vector<double> w(n);
  w[0] = 1.0;
  for (std::size_t k = 1; k < n; ++k) w[k] = w[k - 1] * (1.0 - (alpha + 1.0) / static_cast<double>(k));
  return w;
}

/// Grunwald-Letnikov approximation of the modified Riemann-Liouville
/// derivative: samples are shifted by f(0) before the convolution.
inline SampledFunction gl_frac_derivative(const SampledFunction& f, FractionalOrder alpha) {
  const std::size_t n = f.grid.count;
  const auto w = gl_weights(alpha.value(), n);
  const double scale = std::pow(f.grid.step, -alpha.value());
  const double f0 = f.values[0];
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t k = 0; k <= j; ++k) acc += w[k] * (f.values[j - k] - f0);
    out[j] = scale * acc;
  }
  return {f.grid, std::move(out)};
}

/// Max relative error of `approx` against `exact(t)` on t >= from.
inline double max_relative_error(const SampledFunction& approx, const std::function<double(double)>& exact,
                                 double from) {
  double worst = 0.0;
  for (std::size_t k = 0; k < approx.grid.count; ++k) {
    const double t = approx.grid.at(k);
    if (t + 1e-12 < from) continue;
    const double e = exact(t);
    worst = std::max(worst, std::abs(approx.values[k] - e) / std::max(std::abs(e), 1e-300));
  }
  return worst;
}

inline double max_absolute_error(const SampledFunction& approx, const std::function<double(double)>& exact,
                                 double from) {
  double worst = 0.0;
  for (std::size_t k = 0; k < approx.grid.count; ++k) {
    const double t = approx.grid.at(k);
    if (t + 1e-12 < from) continue;
    worst = std::max(worst, std::abs(approx.values[k] - exact(t)));
  }
  return worst;
}

// Fixtures are "t,value" CSV with a header line.
inline void write_csv(const SampledFunction& f, std::ostream& os) {
  os << "t,value\n" << std::setprecision(17);
  for (std::size_t k = 0; k < f.grid.count; ++k) os << f.grid.at(k) << ',' << f.values[k] << '\n';
}

inline SampledFunction read_csv(std::istream& is) {
  std::string line;
  std::getline(is, line);
  if (line.rfind("t,", 0) != 0) throw DomainError("fixture CSV must start with a t,value header");
  std::vector<double> ts, vs;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    double t = 0, v = 0;
    char comma = 0;
    row >> t >> comma >> v;
    if (!row || comma != ',') throw DomainError("malformed fixture row: " + line);
    ts.push_back(t);
    vs.push_back(v);
  }
  if (ts.size() < 2) throw DomainError("fixture needs at least two rows");
  const double step = ts[1] - ts[0];
  for (std::size_t k = 0; k < ts.size(); ++k) {
    if (std::abs(ts[k] - step * static_cast<double>(k)) > 1e-9 * std::max(1.0, ts.back())) {
      throw DomainError("fixture grid is not uniform from 0");
    }
  }
  return {Grid1D(step, ts.size()), std::move(vs)};
}

}  // namespace fraclei::gl

#endif  // FRACLEI_GLORACLE_HPP
