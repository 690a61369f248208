// fraclei: fractional brackets, algebroid systems and their simulation.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage or config error,
// 3 runtime abort.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fraclei/brackets.hpp"
#include "fraclei/config.hpp"
#include "fraclei/expr.hpp"
#include "fraclei/fracfield.hpp"
#include "fraclei/fracsolve.hpp"
#include "fraclei/registry.hpp"
#include "fraclei/verify.hpp"

namespace {

using namespace fraclei;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;
constexpr int kRuntime = 3;

std::map<std::string, double> parse_params(const std::vector<std::string>& items) {
  std::map<std::string, double> out;
  for (const auto& it : items) {
    const auto p = parse_point(it);
    out.insert(p.begin(), p.end());
  }
  return out;
}

std::vector<double> parse_vector(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigError("not a number: '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) throw ConfigError("not a number: '" + item + "'");
    v.push_back(x);
  }
  if (v.empty()) throw ConfigError("empty vector '" + s + "'");
  return v;
}

TensorField2 parse_tensor(const std::string& text, Symmetry tag, double alpha) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("--tensor: ") + e.what());
  }
  if (!j.is_array()) throw ConfigError("--tensor must be a JSON array of rows");
  const SymbolTable symbols{{"alpha", alpha}};
  try {
    return TensorField2(detail::json_matrix(j, j.size(), j.size(), symbols, "tensor"), tag);
  } catch (const StructureError& e) {
    throw ConfigError(std::string("--tensor: ") + e.what());
  }
}

Symmetry parse_tag(const std::string& s) {
  if (s == "none") return Symmetry::none;
  if (s == "skew") return Symmetry::skew;
  if (s == "symmetric") return Symmetry::symmetric;
  throw ConfigError("unknown tensor tag '" + s + "'");
}

void print_value(const GenPolynomial& p, const std::string& at) {
  if (at.empty()) return;
  std::printf("value = %.10g\n", p.eval(parse_point(at)));
}

// Solver-side failures are runtime aborts; everything raised while reading
// inputs is a usage/config error.
int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const SolverError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kRuntime;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::invalid_argument& e) {  // ConfigError, StructureError
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kRuntime;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional Leibniz brackets, algebroid dynamical systems and fractional ODE simulation"};
  app.require_subcommand(1);

  // derive
  std::string d_expr, d_axis = "x1", d_at;
  double d_alpha = 0.5;
  auto* derive = app.add_subcommand("derive", "fractional partial derivative of an expression");
  derive->add_option("expr", d_expr, "generalized polynomial, e.g. \"x1*x2^0.5\"")->required();
  derive->add_option("--axis", d_axis, "variable to differentiate in")->capture_default_str();
  derive->add_option("--alpha", d_alpha, "order in (0, 1]")->capture_default_str();
  derive->add_option("--at", d_at, "evaluation point, e.g. x1=4,x2=1");

  // bracket
  std::string b_f, b_g, b_tensor, b_tag = "none", b_at;
  double b_alpha = 0.5;
  auto* bracket = app.add_subcommand("bracket", "fractional Leibniz bracket [f, g] = B^ij D_i f D_j g");
  bracket->add_option("f", b_f)->required();
  bracket->add_option("g", b_g)->required();
  bracket->add_option("--tensor", b_tensor, "B as JSON rows of expressions, e.g. [[\"0\",\"x3\"],[\"-x3\",\"0\"]]")
      ->required();
  bracket->add_option("--tag", b_tag, "none, skew or symmetric")->capture_default_str();
  bracket->add_option("--alpha", b_alpha)->capture_default_str();
  bracket->add_option("--at", b_at, "evaluation point");

  // field
  std::string f_system, f_config, f_tensor, f_h, f_tag = "none";
  double f_alpha = 0.5, f_beta = 0.5;
  bool f_literal = false;
  std::vector<std::string> f_params;
  auto* field = app.add_subcommand("field", "print the equations of a registry system, structure file or (B, h)");
  auto* f_sys_opt = field->add_option("--system", f_system, "registry key");
  auto* f_cfg_opt = field->add_option("--config", f_config, "run config or structure JSON");
  auto* f_ten_opt = field->add_option("--tensor", f_tensor, "B as JSON rows of expressions");
  field->add_option("--hamiltonian", f_h, "Hamiltonian expression (with --tensor)");
  field->add_option("--tag", f_tag)->capture_default_str();
  auto* f_alpha_opt = field->add_option("--alpha", f_alpha)->capture_default_str();
  auto* f_beta_opt = field->add_option("--beta", f_beta)->capture_default_str();
  field->add_flag("--paper-literal", f_literal, "use the equations as printed in the source example");
  field->add_option("--param", f_params, "system parameter, e.g. k1=0.2");
  f_sys_opt->excludes(f_cfg_opt)->excludes(f_ten_opt);
  f_cfg_opt->excludes(f_ten_opt);

  // simulate
  std::string s_system, s_config, s_y0, s_method = "abmPece", s_out = "trajectory.csv", s_dump;
  double s_alpha = 0.5, s_beta = 0.5, s_T = 1.0, s_step = 1e-3;
  int s_iters = 1;
  std::size_t s_window = 0;
  bool s_literal = false;
  std::vector<std::string> s_params;
  auto* simulate = app.add_subcommand("simulate", "integrate a system and write its trajectory as CSV");
  auto* s_sys_opt = simulate->add_option("--system", s_system, "registry key");
  auto* s_cfg_opt = simulate->add_option("--config", s_config, "run config or structure JSON");
  auto* s_alpha_opt = simulate->add_option("--alpha", s_alpha)->capture_default_str();
  auto* s_beta_opt = simulate->add_option("--beta", s_beta)->capture_default_str();
  auto* s_y0_opt = simulate->add_option("--y0", s_y0, "initial state, comma separated (default all ones)");
  auto* s_T_opt = simulate->add_option("--T", s_T, "horizon")->capture_default_str();
  auto* s_step_opt = simulate->add_option("--step", s_step)->capture_default_str();
  auto* s_method_opt = simulate->add_option("--method", s_method, "abmPece or fracEuler")->capture_default_str();
  auto* s_iters_opt = simulate->add_option("--corrector-iterations", s_iters)->capture_default_str();
  auto* s_window_opt = simulate->add_option("--memory-window", s_window, "history length (default unbounded)");
  auto* s_literal_opt = simulate->add_flag("--paper-literal", s_literal);
  auto* s_params_opt = simulate->add_option("--param", s_params, "system parameter, e.g. k1=0.2");
  simulate->add_option("--out", s_out, "CSV output path, - for stdout")->capture_default_str();
  simulate->add_option("--dump-config", s_dump, "write the effective run config as JSON");
  s_sys_opt->excludes(s_cfg_opt);

  // verify
  std::string v_suite = "all", v_json;
  auto* verify = app.add_subcommand("verify", "run property suites: rules, brackets, algebroid, solver or all");
  verify->add_option("suite", v_suite)->check(CLI::IsMember({"rules", "brackets", "algebroid", "solver", "all"}))
      ->capture_default_str();
  verify->add_option("--json", v_json, "write the JSON report to this path (- for stdout)");

  auto* list = app.add_subcommand("list-systems", "list the built-in systems");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  if (*derive) {
    return run_guarded([&] {
      const auto p = parse_expression(d_expr);
      const auto d = frac_partial(p, d_axis, FractionalOrder(d_alpha));
      std::printf("%s\n", d.to_string().c_str());
      print_value(d, d_at);
      return kOk;
    });
  }

  if (*bracket) {
    return run_guarded([&] {
      const FractionalOrder a(b_alpha);
      const auto t = parse_tensor(b_tensor, parse_tag(b_tag), b_alpha);
      const SymbolTable symbols{{"alpha", b_alpha}};
      const auto r = leibniz_bracket(t, parse_expression(b_f, symbols), parse_expression(b_g, symbols), a);
      std::printf("%s\n", r.to_string().c_str());
      print_value(r, b_at);
      return kOk;
    });
  }

  if (*field) {
    return run_guarded([&] {
      if (!f_tensor.empty()) {
        if (f_h.empty()) throw ConfigError("--tensor needs --h");
        const auto t = parse_tensor(f_tensor, parse_tag(f_tag), f_alpha);
        const auto x = hamiltonian_field(t, parse_expression(f_h, {{"alpha", f_alpha}}), FractionalOrder(f_alpha));
        for (std::size_t i = 0; i < x.dim(); ++i)
          std::printf("D^%s x%zu = %s\n", format_real(f_alpha).c_str(), i + 1, x.components[i].to_string().c_str());
        return kOk;
      }
      RunConfig c;
      if (!f_config.empty()) {
        c = load_run_config(f_config);
      } else if (!f_system.empty()) {
        c.system = f_system;
      } else {
        throw ConfigError("field needs --system, --config or --tensor");
      }
      if (f_alpha_opt->count()) c.alpha = f_alpha;
      if (f_beta_opt->count()) c.beta = f_beta;
      if (f_literal) c.paper_literal = true;
      for (const auto& [k, v] : parse_params(f_params)) c.params[k] = v;
      const auto b = build_system(c);
      for (std::size_t i = 0; i < b.rhs.size(); ++i)
        std::printf("D^%s %s = %s\n", format_real(b.orders[i]).c_str(), b.state_names[i].c_str(),
                    b.rhs[i].to_string().c_str());
      return kOk;
    });
  }

  if (*simulate) {
    return run_guarded([&] {
      RunConfig c;
      if (!s_config.empty()) {
        c = load_run_config(s_config);
      } else if (!s_system.empty()) {
        c.system = s_system;
      } else {
        throw ConfigError("simulate needs --system or --config");
      }
      if (s_alpha_opt->count()) c.alpha = s_alpha;
      if (s_beta_opt->count()) c.beta = s_beta;
      if (s_y0_opt->count()) c.y0 = parse_vector(s_y0);
      if (s_T_opt->count()) c.horizon = s_T;
      if (s_step_opt->count()) c.step = s_step;
      if (s_method_opt->count()) c.method = parse_method(s_method);
      if (s_iters_opt->count()) c.corrector_iterations = s_iters;
      if (s_window_opt->count()) c.memory_window = s_window;
      if (s_literal_opt->count()) c.paper_literal = true;
      if (s_params_opt->count())
        for (const auto& [k, v] : parse_params(s_params)) c.params[k] = v;

      const auto b = build_system(c);
      if (!s_dump.empty()) {
        std::ofstream out(s_dump);
        if (!out) throw ConfigError("cannot write '" + s_dump + "'");
        out << to_json(c).dump(2) << '\n';
      }
      const auto ivp = b.ivp(c.horizon);
      SolverConfig sc;
      try {
        sc = c.solver();
        detail::validate(ivp, sc);
      } catch (const std::exception& e) {
        throw ConfigError(e.what());
      }
      const auto tr = solve(ivp, sc);
      if (s_out == "-") {
        write_trajectory_csv(tr, std::cout);
      } else {
        std::ofstream out(s_out);
        if (!out) throw ConfigError("cannot write '" + s_out + "'");
        write_trajectory_csv(tr, out);
      }
      std::FILE* summary = s_out == "-" ? stderr : stdout;
      std::fprintf(summary, "%s: %zu steps, method %s, final state", b.key.c_str(), tr.times.size() - 1,
                   to_string(tr.method));
      for (double v : tr.final_state()) std::fprintf(summary, " %.10g", v);
      std::fprintf(summary, "\n");
      return kOk;
    });
  }

  if (*verify) {
    return run_guarded([&] {
      VerifyReport rep;
      rep.seed = seed_from_env();
      run_suite(v_suite, rep);
      std::printf("seed %llu\n", static_cast<unsigned long long>(rep.seed));
      for (const auto& c : rep.checks) {
        std::printf("%s  %-9s %-55s residual %.3g (tol %.3g)%s%s\n", c.passed ? "PASS" : "FAIL", c.suite.c_str(),
                    c.name.c_str(), c.residual, c.tolerance, c.detail.empty() ? "" : "  ", c.detail.c_str());
      }
      if (v_json == "-") {
        std::cout << rep.to_json().dump(2) << '\n';
      } else if (!v_json.empty()) {
        std::ofstream out(v_json);
        if (!out) throw ConfigError("cannot write '" + v_json + "'");
        out << rep.to_json().dump(2) << '\n';
      }
      return rep.all_passed() ? kOk : kVerifyFailed;
    });
  }

  if (*list) {
    std::printf("%-22s %-13s %-28s %s\n", "key", "source", "defaults", "description");
    for (const auto& e : system_registry()) {
      std::string defaults = "alpha=0.5";
      if (e.uses_beta) defaults += ",beta=0.5";
      for (const auto& [k, v] : e.default_extra) defaults += "," + k + "=" + format_real(v);
      std::printf("%-22s %-13s %-28s %s\n", e.key.c_str(), e.citation.c_str(), defaults.c_str(),
                  e.description.c_str());
    }
    std::printf("all systems start from y0 = ones, T = 1, step = 0.001\n");
    return kOk;
  }
  return kUsage;
}
