#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "fraclei/config.hpp"
#include "fraclei/registry.hpp"
#include "oracles.hpp"

using namespace fraclei;

namespace {
void expect_poly_near(const GenPolynomial& a, const GenPolynomial& b, double tol = 1e-12) {
  EXPECT_TRUE(approx_equal(a, b, tol)) << a.to_string() << "  vs  " << b.to_string();
}

nlohmann::json example_structure_json() {
  return nlohmann::json::parse(R"({
    "n": 3, "m": 3,
    "C": [[["0","0","0"],["0","0","-x3"],["0","x2","0"]],
          [["0","0","x3"],["0","0","0"],["-x1","0","0"]],
          [["0","-x2","0"],["x1","0","0"],["0","0","0"]]],
    "rho1": [["0","-x3","x2"],["x3","0","0"],["-x2","0","0"]],
    "rho2": [["0","1","0"],["-1","0","x1"],["0","-x1","0"]],
    "h": "x2^alpha*xi2^beta + x3^alpha*xi3^beta"
  })");
}
}  // namespace

TEST(Registry, KeysAndCitations) {
  const std::vector<std::pair<std::string, std::string>> expect{{"gradient-frac", "Eq. (28)"},
                                                                {"gradient-frac-alpha", "Eq. (29)"},
                                                                {"metriplectic-frac", "Example 3.2"},
                                                                {"maxwell-bloch-frac", "Eq. (35)"},
                                                                {"algebroid-mb", "Eq. (54)"}};
  ASSERT_EQ(system_registry().size(), expect.size());
  for (std::size_t k = 0; k < expect.size(); ++k) {
    EXPECT_EQ(system_registry()[k].key, expect[k].first);
    EXPECT_EQ(system_registry()[k].citation, expect[k].second);
  }
  EXPECT_THROW(find_system("lorenz"), std::invalid_argument);
}

TEST(Registry, EveryEntryBuildsWithDeclaredDimension) {
  for (const auto& e : system_registry())
    for (bool literal : {false, true}) {
      SystemParams p;
      p.paper_literal = literal;
      p.extra = e.default_extra;
      const auto b = e.build(p);
      EXPECT_EQ(b.rhs.size(), e.dim) << e.key;
      EXPECT_EQ(b.orders.size(), e.dim) << e.key;
      EXPECT_EQ(b.y0.size(), e.dim) << e.key;
      EXPECT_EQ(b.state_names.size(), e.dim) << e.key;
    }
}

TEST(Registry, AssembledAndLiteralAgreeWhereTheTablesAgree) {
  for (const std::string key : {"gradient-frac", "metriplectic-frac", "maxwell-bloch-frac"})
    for (double a : {0.4, 0.7}) {
      SystemParams p;
      p.alpha = a;
      p.extra = find_system(key).default_extra;
      const auto assembled = find_system(key).build(p);
      p.paper_literal = true;
      const auto literal = find_system(key).build(p);
      for (std::size_t i = 0; i < assembled.rhs.size(); ++i) expect_poly_near(assembled.rhs[i], literal.rhs[i], 1e-10);
    }
}

TEST(Registry, AlgebroidMbAssemblyDiffersFromDisplayedSystem) {
  SystemParams p;
  const auto assembled = find_system("algebroid-mb").build(p);
  p.paper_literal = true;
  const auto literal = find_system("algebroid-mb").build(p);
  bool differs = false;
  for (std::size_t i = 0; i < 6; ++i) differs = differs || !approx_equal(assembled.rhs[i], literal.rhs[i]);
  EXPECT_TRUE(differs);
  EXPECT_EQ(assembled.orders, (std::vector<double>{0.5, 0.5, 0.5, 0.5, 0.5, 0.5}));
}

TEST(Registry, MixedOrdersForAlgebroidSystem) {
  SystemParams p;
  p.alpha = 0.6;
  p.beta = 0.9;
  const auto b = find_system("algebroid-mb").build(p);
  EXPECT_EQ(b.orders, (std::vector<double>{0.6, 0.6, 0.6, 0.9, 0.9, 0.9}));
  EXPECT_EQ(b.state_names, (std::vector<std::string>{"x1", "x2", "x3", "xi1", "xi2", "xi3"}));
}

TEST(RunConfig, JsonRoundTrip) {
  RunConfig c;
  c.system = "maxwell-bloch-frac";
  c.alpha = 0.75;
  c.y0 = std::vector<double>{1.0, 0.5, 0.25};
  c.horizon = 3.0;
  c.step = 5e-3;
  c.method = Method::frac_euler;
  c.corrector_iterations = 2;
  c.memory_window = 400;
  const auto j = to_json(c);
  const auto back = run_config_from_json(j);
  EXPECT_EQ(to_json(back), j);
  EXPECT_EQ(back.method, Method::frac_euler);
  EXPECT_EQ(*back.memory_window, 400u);
  EXPECT_TRUE(j.at("memory_window").is_number());
  RunConfig d;
  d.system = "gradient-frac";
  EXPECT_TRUE(to_json(d).at("memory_window").is_null());
}

TEST(RunConfig, LoadFromFile) {
  const std::string path = testing::TempDir() + "fraclei_cfg.json";
  {
    std::ofstream out(path);
    out << R"({"system": "gradient-frac", "alpha": 0.3, "params": {"k3": 0.5}})";
  }
  const auto c = load_run_config(path);
  EXPECT_EQ(*c.system, "gradient-frac");
  EXPECT_EQ(c.alpha, 0.3);
  EXPECT_EQ(c.params.at("k3"), 0.5);
  std::remove(path.c_str());
  EXPECT_THROW(load_run_config(path), ConfigError);
}

TEST(RunConfig, Errors) {
  EXPECT_THROW(run_config_from_json(nlohmann::json::array()), ConfigError);
  EXPECT_THROW(run_config_from_json({{"alpha", 0.5}}), ConfigError);
  EXPECT_THROW(run_config_from_json({{"system", "gradient-frac"}, {"alpha", "half"}}), ConfigError);
  EXPECT_THROW(run_config_from_json({{"system", "gradient-frac"}, {"method", "rk45"}}), std::invalid_argument);
  RunConfig c;
  c.system = "nope";
  EXPECT_THROW(build_system(c), ConfigError);
  c.system = "gradient-frac";
  c.y0 = std::vector<double>{1.0};
  EXPECT_THROW(build_system(c), ConfigError);
  c.y0.reset();
  c.params["zeta"] = 1.0;
  EXPECT_THROW(build_system(c), ConfigError);
  c.params.clear();
  c.alpha = 1.5;
  EXPECT_THROW(build_system(c), ConfigError);
}

TEST(RunConfig, ParamsOverrideDefaults) {
  RunConfig c;
  c.system = "gradient-frac";
  c.alpha = 0.5;
  c.params["k1"] = 2.0;
  const auto b = build_system(c);
  const double g = 1.0 / oracle::gamma(1.5);
  EXPECT_NEAR(b.rhs[0].eval({{"x1", 1}, {"x2", 1}, {"x3", 1}}), 2.0 * g, 1e-10);
}

TEST(StructureConfig, ParsesExampleStructure) {
  const auto spec = parse_structure(example_structure_json(), 0.5, 0.5);
  const auto ex = examples::mb_algebroid_structure();
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      for (std::size_t d = 0; d < 3; ++d) EXPECT_EQ(spec.structure.c(a, b, d), ex.c(a, b, d));
      EXPECT_EQ(spec.structure.rho1(a, b), ex.rho1(a, b));
      EXPECT_EQ(spec.structure.rho2(a, b), ex.rho2(a, b));
    }
  EXPECT_FALSE(spec.structure.tags().pre_lie);
  EXPECT_EQ(spec.h, examples::mb_algebroid_hamiltonian(0.5, 0.5));
}

TEST(StructureConfig, BuildsSameSystemAsRegistry) {
  RunConfig c;
  c.structure = example_structure_json();
  c.alpha = 0.6;
  c.beta = 0.8;
  const auto from_file = build_system(c);
  SystemParams p;
  p.alpha = 0.6;
  p.beta = 0.8;
  const auto reg = find_system("algebroid-mb").build(p);
  ASSERT_EQ(from_file.rhs.size(), 6u);
  for (std::size_t i = 0; i < 6; ++i) expect_poly_near(from_file.rhs[i], reg.rhs[i]);
  EXPECT_EQ(from_file.orders, reg.orders);
}

TEST(StructureConfig, BareStructureFileIsAccepted) {
  const auto c = run_config_from_json(example_structure_json());
  EXPECT_TRUE(c.structure.has_value());
  EXPECT_FALSE(c.system.has_value());
}

TEST(StructureConfig, Errors) {
  auto j = example_structure_json();
  j["tags"] = {"abelian"};
  EXPECT_THROW(parse_structure(j, 0.5, 0.5), ConfigError);
  j = example_structure_json();
  j["C"][0][1][2] = "x1*";
  EXPECT_THROW(parse_structure(j, 0.5, 0.5), ConfigError);
  j = example_structure_json();
  j["tags"] = {"preLie"};  // anchors are not opposite
  EXPECT_THROW(parse_structure(j, 0.5, 0.5), ConfigError);
  j = example_structure_json();
  j["rho1"] = {{"0"}};
  EXPECT_THROW(parse_structure(j, 0.5, 0.5), ConfigError);
  j = example_structure_json();
  j.erase("h");
  EXPECT_THROW(parse_structure(j, 0.5, 0.5), ConfigError);
}
