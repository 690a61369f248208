#ifndef FRACLEI_CONFIG_HPP
#define FRACLEI_CONFIG_HPP

#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fraclei/algebroid.hpp"
#include "fraclei/expr.hpp"
#include "fraclei/fracsolve.hpp"
#include "fraclei/registry.hpp"

namespace fraclei {

/// Malformed or inconsistent run/structure configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Algebroid data as read from a structure file. Expressions may use alpha,
/// beta and the base/fibre coordinates.
struct StructureSpec {
  AlgebroidStructure structure;
  GenPolynomial h;
};

namespace detail {

inline GenPolynomial json_expr(const nlohmann::json& j, const SymbolTable& symbols, const std::string& where) {
  if (j.is_number()) return GenPolynomial::constant(j.get<double>());
  if (!j.is_string()) throw ConfigError(where + ": expected an expression string or number");
  try {
    return parse_expression(j.get<std::string>(), symbols);
  } catch (const ParseError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

inline PolyMatrix json_matrix(const nlohmann::json& j, std::size_t rows, std::size_t cols, const SymbolTable& symbols,
                              const std::string& where) {
  if (!j.is_array() || j.size() != rows) throw ConfigError(where + ": expected " + std::to_string(rows) + " rows");
  PolyMatrix out(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw ConfigError(where + ": row " + std::to_string(r) + " needs " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c)
      out[r].push_back(json_expr(j[r][c], symbols, where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
  }
  return out;
}

}  // namespace detail

inline bool is_structure_json(const nlohmann::json& j) { return j.is_object() && j.contains("C"); }

/// {"n", "m", "C": m x m x m, "rho1": m x n, "rho2": m x n, "h", "tags"?}
inline StructureSpec parse_structure(const nlohmann::json& j, double alpha, double beta) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    const auto m = j.at("m").get<std::size_t>();
    const SymbolTable symbols{{"alpha", alpha}, {"beta", beta}};
    const auto& cj = j.at("C");
    if (!cj.is_array() || cj.size() != m) throw ConfigError("C: expected " + std::to_string(m) + " planes");
    PolyTensor3 c;
    for (std::size_t a = 0; a < m; ++a) c.push_back(detail::json_matrix(cj[a], m, m, symbols, "C[" + std::to_string(a) + "]"));
    AlgebroidTags tags;
    if (j.contains("tags")) {
      for (const auto& t : j.at("tags")) {
        const auto s = t.get<std::string>();
        if (s == "preLie") tags.pre_lie = true;
        else if (s == "symmetric") tags.symmetric = true;
        else throw ConfigError("unknown structure tag '" + s + "'");
      }
    }
    AlgebroidStructure st(n, m, std::move(c), detail::json_matrix(j.at("rho1"), m, n, symbols, "rho1"),
                          detail::json_matrix(j.at("rho2"), m, n, symbols, "rho2"), tags);
    return {std::move(st), detail::json_expr(j.at("h"), symbols, "h")};
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("structure: ") + e.what());
  } catch (const StructureError& e) {
    throw ConfigError(std::string("structure: ") + e.what());
  }
}

/// Everything a simulation run needs. Either `system` names a registry entry
/// or `structure` holds an inline algebroid structure.
struct RunConfig {
  std::optional<std::string> system;
  std::optional<nlohmann::json> structure;
  double alpha = 0.5;
  double beta = 0.5;
  std::optional<std::vector<double>> y0;
  double horizon = 1.0;
  double step = 1e-3;
  Method method = Method::abm_pece;
  int corrector_iterations = 1;
  std::optional<std::size_t> memory_window;
  bool paper_literal = false;
  std::map<std::string, double> params;

  SolverConfig solver() const {
    SolverConfig c;
    c.step = step;
    c.method = method;
    c.corrector_iterations = corrector_iterations;
    c.memory_window = memory_window;
    return c;
  }
};

inline nlohmann::json to_json(const RunConfig& c) {
  nlohmann::json j;
  if (c.system) j["system"] = *c.system;
  if (c.structure) j["structure"] = *c.structure;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  if (c.y0) j["y0"] = *c.y0;
  j["T"] = c.horizon;
  j["step"] = c.step;
  j["method"] = to_string(c.method);
  j["corrector_iterations"] = c.corrector_iterations;
  j["memory_window"] = c.memory_window ? nlohmann::json(*c.memory_window) : nlohmann::json(nullptr);
  j["paper_literal"] = c.paper_literal;
  j["params"] = c.params;
  return j;
}

/// Reads a run config. A bare structure file (top-level "C") is accepted as
/// well; its alpha/beta become the run orders.
inline RunConfig run_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  try {
    if (is_structure_json(j)) {
      c.structure = j;
    } else {
      if (j.contains("system")) c.system = j.at("system").get<std::string>();
      if (j.contains("structure")) c.structure = j.at("structure");
    }
    if (j.contains("alpha")) c.alpha = j.at("alpha").get<double>();
    if (j.contains("beta")) c.beta = j.at("beta").get<double>();
    if (j.contains("y0")) c.y0 = j.at("y0").get<std::vector<double>>();
    if (j.contains("T")) c.horizon = j.at("T").get<double>();
    if (j.contains("step")) c.step = j.at("step").get<double>();
    if (j.contains("method")) c.method = parse_method(j.at("method").get<std::string>());
    if (j.contains("corrector_iterations")) c.corrector_iterations = j.at("corrector_iterations").get<int>();
    if (j.contains("memory_window") && !j.at("memory_window").is_null())
      c.memory_window = j.at("memory_window").get<std::size_t>();
    if (j.contains("paper_literal")) c.paper_literal = j.at("paper_literal").get<bool>();
    if (j.contains("params")) c.params = j.at("params").get<std::map<std::string, double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (c.system.has_value() == c.structure.has_value())
    throw ConfigError("config needs exactly one of \"system\" or an inline structure");
  return c;
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return run_config_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
}

/// Assembles the system a config describes. y0 from the config overrides the
/// builder default and must match the state dimension.
inline BuiltSystem build_system(const RunConfig& c) {
  // Order range is a config concern here, not a solver abort.
  try {
    (void)FractionalOrder(c.alpha);
    (void)FractionalOrder(c.beta);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  BuiltSystem b;
  if (c.system) {
    const SystemRegistryEntry* entry = nullptr;
    try {
      entry = &find_system(*c.system);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    SystemParams p;
    p.alpha = c.alpha;
    p.beta = c.beta;
    p.paper_literal = c.paper_literal;
    p.extra = entry->default_extra;
    for (const auto& [k, v] : c.params) {
      if (!p.extra.count(k)) throw ConfigError("system '" + *c.system + "' has no parameter '" + k + "'");
      p.extra[k] = v;
    }
    b = entry->build(p);
  } else {
    if (c.paper_literal) throw ConfigError("paper_literal applies to registry systems only");
    const auto spec = parse_structure(*c.structure, c.alpha, c.beta);
    const auto sys = dynamical_system(spec.structure, spec.h, FractionalOrder(c.alpha), FractionalOrder(c.beta));
    b.key = "structure";
    b.state_names = sys.state_names();
    b.orders.assign(sys.n, c.alpha);
    b.orders.insert(b.orders.end(), sys.m, c.beta);
    b.rhs = sys.rhs_x;
    b.rhs.insert(b.rhs.end(), sys.rhs_xi.begin(), sys.rhs_xi.end());
    b.y0.assign(sys.n + sys.m, 1.0);
  }
  if (c.y0) {
    if (c.y0->size() != b.y0.size())
      throw ConfigError("y0 has " + std::to_string(c.y0->size()) + " entries, system has " +
                        std::to_string(b.y0.size()) + " states");
    b.y0 = *c.y0;
  }
  return b;
}

}  // namespace fraclei

#endif  // FRACLEI_CONFIG_HPP
