// Integrates the fractional Maxwell-Bloch system for orders approaching 1 and
// prints the sup distance to the classical trajectory.

#include <cstdio>

#include "fraclei/fracsolve.hpp"
#include "fraclei/registry.hpp"
#include "fraclei/verify.hpp"

int main() {
  using namespace fraclei;
  const std::vector<double> y0{1.0, 0.5, 0.5};
  const double horizon = 5.0;
  const auto reference = rk4_reference(maxwell_bloch_ivp(1.0, y0, horizon), 1e-3);
  std::printf("%-8s %-14s %s\n", "alpha", "distance", "final state");
  for (double a : {1.0, 0.999, 0.99, 0.95, 0.9, 0.8}) {
    const auto tr = solve(maxwell_bloch_ivp(a, y0, horizon), SolverConfig{});
    const auto& y = tr.final_state();
    std::printf("%-8.3f %-14.6e (%.6f, %.6f, %.6f)\n", a, sup_distance(tr, reference), y[0], y[1], y[2]);
  }
}
