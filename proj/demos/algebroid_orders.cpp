// Prints the mixed-order system of the rigid-body algebroid for a few order
// pairs and the state it reaches at t = 0.5.

#include <cstdio>

#include "fraclei/fracsolve.hpp"
#include "fraclei/registry.hpp"

int main() {
  using namespace fraclei;
  const auto structure = examples::mb_algebroid_structure();
  for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{0.9, 1.0}, std::pair{1.0, 0.9}, std::pair{0.7, 0.5}}) {
    auto sys = dynamical_system(structure, examples::mb_algebroid_hamiltonian(a, b), FractionalOrder(a), FractionalOrder(b));
    std::printf("alpha = %.2f, beta = %.2f\n", a, b);
    const auto names = sys.state_names();
    for (std::size_t i = 0; i < sys.n; ++i) std::printf("  D %s = %s\n", names[i].c_str(), sys.rhs_x[i].to_string().c_str());
    for (std::size_t k = 0; k < sys.m; ++k)
      std::printf("  D %s = %s\n", names[sys.n + k].c_str(), sys.rhs_xi[k].to_string().c_str());
    sys.x0 = {0.5, 0.4, 0.3};
    sys.xi0 = {0.2, 0.3, 0.1};
    SolverConfig cfg;
    cfg.step = 2e-3;
    try {
      const auto tr = solve_mixed(sys, cfg, 0.5);
      std::printf("  state at t = 0.5:");
      for (double v : tr.final_state()) std::printf(" %.5f", v);
      std::printf("\n\n");
    } catch (const SolverError& e) {
      // fractional powers of a coordinate stop making sense once it turns negative
      std::printf("  stopped at step %ld: %s\n\n", e.step(), e.what());
    }
  }
}
