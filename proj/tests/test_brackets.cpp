#include <gtest/gtest.h>

#include "fraclei/brackets.hpp"
#include "fraclei/expr.hpp"
#include "fraclei/registry.hpp"
#include "fraclei/verify.hpp"
#include "oracles.hpp"

using fraclei::FractionalOrder;
using fraclei::GenPolynomial;
using fraclei::PolyMatrix;
using fraclei::Symmetry;
using fraclei::TensorField2;
namespace ex = fraclei::examples;

namespace {
GenPolynomial p(const std::string& s, double alpha = 0.5) { return fraclei::parse_expression(s, {{"alpha", alpha}}); }
GenPolynomial c(double k) { return GenPolynomial::constant(k); }

void expect_poly_near(const GenPolynomial& a, const GenPolynomial& b, double tol = 1e-12) {
  EXPECT_TRUE(fraclei::approx_equal(a, b, tol)) << a.to_string() << "  vs  " << b.to_string();
}

TensorField2 skew3() { return TensorField2({{c(0), p("x3"), p("-x2")}, {p("-x3"), c(0), p("x1")}, {p("x2"), p("-x1"), c(0)}}, Symmetry::skew); }
}  // namespace

TEST(TensorField2, TagsAreVerified) {
  EXPECT_NO_THROW(skew3());
  EXPECT_THROW(TensorField2({{c(0), p("x1")}, {p("x1"), c(0)}}, Symmetry::skew), fraclei::StructureError);
  EXPECT_THROW(TensorField2({{c(1), c(0)}, {c(0), c(0)}}, Symmetry::skew), fraclei::StructureError);
  EXPECT_THROW(TensorField2({{c(0), p("x1")}, {c(0), c(0)}}, Symmetry::symmetric), fraclei::StructureError);
  EXPECT_THROW(TensorField2({{c(0), c(1)}}), fraclei::StructureError);
}

TEST(LeibnizBracket, SkewSelfBracketVanishes) {
  const auto f = p("x1^2*x2 + 3*x3^1.5");
  EXPECT_TRUE(fraclei::approx_zero(fraclei::leibniz_bracket(skew3(), f, f, FractionalOrder(0.4))));
}

TEST(LeibnizBracket, ConstantArgumentGivesZero) {
  EXPECT_TRUE(fraclei::leibniz_bracket(skew3(), c(5), p("x1*x2"), FractionalOrder(0.5)).is_zero());
  EXPECT_TRUE(fraclei::leibniz_bracket(skew3(), p("x1*x2"), c(5), FractionalOrder(0.5)).is_zero());
}

TEST(LeibnizBracket, GradientTensorAlphaPowers) {
  // B = diag(k), f = x1^a, g = x2^a x3^a: no diagonal overlap, bracket is zero;
  // with f = x1^a x2^a the x2 slot gives k2 G^2 x1^a x3^a.
  const double a = 0.5;
  const auto b = ex::gradient_tensor({c(0.1), c(0.2), c(0.3)});
  EXPECT_TRUE(fraclei::leibniz_bracket(b, p("x1^alpha"), p("x2^alpha*x3^alpha"), FractionalOrder(a)).is_zero());
  const double g = oracle::gamma(1 + a);
  expect_poly_near(fraclei::leibniz_bracket(b, p("x1^alpha*x2^alpha"), p("x2^alpha*x3^alpha"), FractionalOrder(a)),
                   0.2 * g * g * p("x1^alpha*x3^alpha"));
}

TEST(HamiltonianField, GradientExampleComponents) {
  for (double a : {0.25, 0.5, 0.75}) {
    const auto f = fraclei::hamiltonian_field(ex::gradient_tensor({c(0.1), c(0.1), c(-0.2)}), p("x1*x2*x3"),
                                              FractionalOrder(a));
    const double k = oracle::gamma(2) / oracle::gamma(2 - a);
    expect_poly_near(f.components[0], 0.1 * k * p("x1^(1-alpha)*x2*x3", a), 1e-10);
    expect_poly_near(f.components[1], 0.1 * k * p("x1*x2^(1-alpha)*x3", a), 1e-10);
    expect_poly_near(f.components[2], -0.2 * k * p("x1*x2*x3^(1-alpha)", a), 1e-10);
  }
}

TEST(HamiltonianField, AlphaPowerHamiltonianFollowsPowerRule) {
  const double a = 0.6;
  const auto f = fraclei::hamiltonian_field(ex::gradient_tensor({c(1), c(2), c(3)}), ex::gradient_hamiltonian_alpha(a),
                                            FractionalOrder(a));
  const double g = oracle::gamma(1 + a);
  expect_poly_near(f.components[0], g * p("x2^alpha*x3^alpha", a), 1e-10);
  expect_poly_near(f.components[2], 3 * g * p("x1^alpha*x2^alpha", a), 1e-10);
}

TEST(HamiltonianField, ConstantHamiltonianGivesZeroField) {
  const auto f = fraclei::hamiltonian_field(skew3(), c(3), FractionalOrder(0.5));
  for (const auto& x : f.components) EXPECT_TRUE(x.is_zero());
}

TEST(HamiltonianField, OrderOneIsClassicalGradientContraction) {
  const auto h = p("x1^2*x2 + x3^3 - x1*x3");
  const auto f = fraclei::hamiltonian_field(skew3(), h, FractionalOrder(1.0));
  for (std::size_t i = 0; i < 3; ++i) {
    GenPolynomial expect;
    for (std::size_t j = 0; j < 3; ++j) expect += skew3()(i, j) * fraclei::classical_partial(h, fraclei::base_var(j));
    expect_poly_near(f.components[i], expect);
  }
}

TEST(HamiltonianField, CoordinateRuleDiffersFromLiteralBracket) {
  const double a = 0.5;
  const auto h = p("x2*x3");
  const auto f = fraclei::hamiltonian_field(skew3(), h, FractionalOrder(a));
  const auto lit = fraclei::leibniz_bracket(skew3(), p("x1"), h, FractionalOrder(a));
  const double k = oracle::gamma(2) / oracle::gamma(2 - a);
  expect_poly_near(lit, k * p("x1^0.5") * f.components[0], 1e-10);
}

TEST(MetriplecticField, ExampleMatchesClosedForm) {
  for (double a : {0.3, 0.7}) {
    const std::vector<GenPolynomial> av{c(1.5), c(-0.5), c(2.0)};
    const auto pt = ex::metriplectic_p();
    const auto gt = ex::metriplectic_g(av);
    const auto f = fraclei::metriplectic_field(pt, gt, ex::metriplectic_hamiltonian(av, a), FractionalOrder(a));
    for (std::size_t i = 0; i < 3; ++i) {
      GenPolynomial expect;
      for (std::size_t j = 0; j < 3; ++j) expect += (pt(i, j) + gt(i, j)) * (av[j] + c(1));
      expect_poly_near(f.components[i], oracle::gamma(1 + a) * expect, 1e-10);
    }
  }
}

TEST(MetriplecticField, ZeroTensorsAndReductionToHamiltonian) {
  const auto h = p("x1*x2^2 + x3^1.5");
  const FractionalOrder a(0.5);
  const auto z = fraclei::metriplectic_field(TensorField2::zero(3), TensorField2::zero(3), h, a);
  for (const auto& x : z.components) EXPECT_TRUE(x.is_zero());
  const auto m = fraclei::metriplectic_field(skew3(), TensorField2::zero(3), h, a);
  const auto hf = fraclei::hamiltonian_field(skew3(), h, a);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(m.components[i], hf.components[i]);
}

TEST(MetriplecticField, RejectsNonSkewOrNonSymmetric) {
  const TensorField2 nonskew({{c(0), c(1), c(0)}, {c(1), c(0), c(0)}, {c(0), c(0), c(0)}});
  EXPECT_THROW(fraclei::metriplectic_field(nonskew, TensorField2::zero(3), p("x1"), FractionalOrder(0.5)),
               fraclei::StructureError);
  EXPECT_THROW(fraclei::metriplectic_field(skew3(), skew3(), p("x1"), FractionalOrder(0.5)), fraclei::StructureError);
}

TEST(TwoPotentialField, MaxwellBlochEquations) {
  for (double a : {0.2, 0.5, 0.9, 1.0}) {
    const auto [h1, h2] = ex::maxwell_bloch_potentials(a);
    const auto f = fraclei::two_potential_field(ex::maxwell_bloch_p(), ex::maxwell_bloch_g(), h1, h2, FractionalOrder(a));
    const double g = oracle::gamma(1 + a);
    expect_poly_near(f.components[0], g * p("x2"), 1e-10);
    expect_poly_near(f.components[1], g * p("x1*x3"), 1e-10);
    expect_poly_near(f.components[2], -g * p("x1*x2 + x2^2"), 1e-10);
  }
}

TEST(TwoPotentialField, UnnormalizedPotentialsCarryShiftedGamma) {
  const double a = 0.5;
  const auto [h1, h2] = ex::maxwell_bloch_potentials(a, false);
  const auto f = fraclei::two_potential_field(ex::maxwell_bloch_p(), ex::maxwell_bloch_g(), h1, h2, FractionalOrder(a));
  expect_poly_near(f.components[0], oracle::gamma(2 + a) * p("x2"), 1e-10);
}

TEST(TwoPotentialField, EqualPotentialsGiveMetriplectic) {
  const auto h = p("x1^2 + x2*x3");
  const FractionalOrder a(0.7);
  const auto gt = ex::maxwell_bloch_g();
  const auto t = fraclei::two_potential_field(skew3(), gt, h, h, a);
  const auto m = fraclei::metriplectic_field(skew3(), gt, h, a);
  for (std::size_t i = 0; i < 3; ++i) expect_poly_near(t.components[i], m.components[i]);
  const auto z = fraclei::two_potential_field(skew3(), gt, c(0), c(0), a);
  for (const auto& x : z.components) EXPECT_TRUE(x.is_zero());
}

TEST(ProductIdentity, UnitSecondFactor) {
  const auto r = fraclei::verify_product_identity(skew3(), p("x1^2*x2"), c(1), p("x3*x1"), FractionalOrder(0.5));
  EXPECT_TRUE(r.holds());
}

TEST(ProductIdentity, PlaneExample) {
  const TensorField2 b({{c(1), c(0)}, {c(0), c(1)}});
  const auto r = fraclei::verify_product_identity(b, p("x1"), p("x1"), p("x2"), FractionalOrder(0.5));
  EXPECT_TRUE(r.holds());
  EXPECT_TRUE(fraclei::approx_zero(r.residual));
}

TEST(ProductIdentity, ClassicalLeibnizRule) {
  fraclei::gen::Source src(19);
  for (int k = 0; k < 30; ++k) {
    const TensorField2 b(fraclei::gen::skew_matrix(src, 2));
    const auto f = fraclei::gen::polynomial(src, {"x1", "x2"}, 2, {1.0, 2.0});
    const auto h = fraclei::gen::polynomial(src, {"x1", "x2"}, 2, {0.0, 1.0, 2.0});
    const auto g = fraclei::gen::polynomial(src, {"x1", "x2"});
    EXPECT_TRUE(fraclei::verify_product_identity(b, f, h, g, FractionalOrder(1.0)).holds(1e-10));
  }
}

TEST(BracketProperties, AntisymmetryAndBilinearity) {
  fraclei::gen::Source src(23);
  for (int k = 0; k < 200; ++k) {
    const TensorField2 b(fraclei::gen::skew_matrix(src, 3), Symmetry::skew);
    const auto f = fraclei::gen::polynomial(src, fraclei::base_vars(3));
    const auto g = fraclei::gen::polynomial(src, fraclei::base_vars(3));
    const auto h = fraclei::gen::polynomial(src, fraclei::base_vars(3));
    const FractionalOrder a(src.real(0.05, 1.0));
    expect_poly_near(fraclei::leibniz_bracket(b, f, g, a), -fraclei::leibniz_bracket(b, g, f, a), 1e-11);
    EXPECT_TRUE(fraclei::approx_zero(fraclei::leibniz_bracket(b, f, f, a), 1e-11));
    expect_poly_near(fraclei::leibniz_bracket(b, f, 2.0 * g - h, a),
                     2.0 * fraclei::leibniz_bracket(b, f, g, a) - fraclei::leibniz_bracket(b, f, h, a), 1e-11);
  }
}

TEST(BracketProperties, MaxwellBlochSkewPartConservesFirstPotential) {
  const auto [h1, h2] = ex::maxwell_bloch_potentials(1.0);
  const auto f = fraclei::hamiltonian_field(ex::maxwell_bloch_p(), h1, FractionalOrder(1.0));
  GenPolynomial acc;
  for (std::size_t i = 0; i < 3; ++i) acc += f.components[i] * fraclei::classical_partial(h1, fraclei::base_var(i));
  EXPECT_TRUE(acc.is_zero()) << acc.to_string();
}
