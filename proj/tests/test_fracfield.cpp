#include <gtest/gtest.h>

#include <cmath>

#include "fraclei/fracfield.hpp"
#include "fraclei/verify.hpp"
#include "oracles.hpp"

using fraclei::FractionalOrder;
using fraclei::GenPolynomial;

namespace {
GenPolynomial v(const std::string& n, double e = 1.0) { return GenPolynomial::variable(n, e); }
GenPolynomial c(double k) { return GenPolynomial::constant(k); }

void expect_poly_near(const GenPolynomial& a, const GenPolynomial& b, double tol = 1e-12) {
  EXPECT_TRUE(fraclei::approx_equal(a, b, tol)) << a.to_string() << "  vs  " << b.to_string();
}
}  // namespace

TEST(FracPartial, GradientExampleComponent) {
  for (double a : {0.3, 0.5, 0.9}) {
    const auto d = fraclei::frac_partial(v("x1") * v("x2") * v("x3"), "x1", a);
    const auto expect = (oracle::gamma(2.0) / oracle::gamma(2.0 - a)) * v("x1", 1.0 - a) * v("x2") * v("x3");
    expect_poly_near(d, expect, 1e-10);
  }
}

TEST(FracPartial, ConstantsVanish) {
  EXPECT_TRUE(fraclei::frac_partial(c(7.0), "x1", 0.3).is_zero());
  EXPECT_TRUE(fraclei::frac_partial(v("x2", 2.5), "x1", 0.3).is_zero());
}

TEST(FracPartial, PowerOfOrderGivesGammaConstant) {
  for (double a : {0.2, 0.5, 1.0}) {
    const auto d = fraclei::frac_partial(v("x1", a), "x1", a);
    ASSERT_TRUE(d.is_constant());
    EXPECT_NEAR(d.constant_term(), oracle::gamma(1.0 + a), 1e-12);
  }
}

TEST(FracPartial, ExponentBelowOrderIsDomainError) {
  EXPECT_THROW(fraclei::frac_partial(v("x1", 0.3), "x1", 0.5), fraclei::DomainError);
  EXPECT_NO_THROW(fraclei::frac_partial(v("x1", 0.5), "x1", 0.5));
}

TEST(FracPartial, OrderOneIsClassical) {
  const auto p = 3.0 * v("x1", 3) * v("x2") - v("x1") + c(4) + v("x1", 2.5);
  expect_poly_near(fraclei::frac_partial(p, "x1", 1.0), fraclei::classical_partial(p, "x1"));
}

TEST(FracPartial, EvalOfGradientComponentAtOnes) {
  const auto d = fraclei::frac_partial(v("x1") * v("x2") * v("x3"), "x1", 0.5);
  EXPECT_NEAR(d.eval({{"x1", 1}, {"x2", 1}, {"x3", 1}}), 1.1283791671, 1e-10);
}

TEST(FracPartial, HalfPowerAtFour) {
  const auto d = fraclei::frac_partial(v("x1", 0.5), "x1", 0.5);
  EXPECT_NEAR(d.eval({{"x1", 4}}), 0.8862269255, 1e-10);
}

TEST(FracAntiderivative, Examples) {
  // t^0, order -1/2 -> t^0.5 / Gamma(1.5)
  expect_poly_near(fraclei::frac_antiderivative_power(c(1), "t", -0.5), (1.0 / oracle::gamma(1.5)) * v("t", 0.5));
  // t, order -1 -> t^2 / 2
  expect_poly_near(fraclei::frac_antiderivative_power(v("t"), "t", -1.0), 0.5 * v("t", 2));
  // t^a, order a -> Gamma(1+a)
  const auto g = fraclei::frac_antiderivative_power(v("t", 0.4), "t", 0.4);
  EXPECT_NEAR(g.constant_term(), oracle::gamma(1.4), 1e-12);
}

TEST(FracAntiderivative, IntegralThenDerivativeRoundTrips) {
  const auto p = 2.0 * v("t", 1.5) + v("t", 3);
  for (double a : {0.3, 0.7}) {
    const auto i = fraclei::frac_antiderivative_power(p, "t", -a);
    expect_poly_near(fraclei::frac_partial(i, "t", a), p, 1e-10);
  }
}

TEST(ProductSeries, MatchesDirectRuleOnProductOfPowers) {
  const FractionalOrder a(0.5);
  const auto r = fraclei::frac_product_series(v("t"), v("t"), "t", a);
  EXPECT_FALSE(r.truncated);
  expect_poly_near(r.value, fraclei::frac_partial(v("t", 2), "t", a));
}

TEST(ProductSeries, ConstantSecondFactorGivesPartial) {
  const FractionalOrder a(0.35);
  const auto f = v("t", 1.5) * v("s") + 2.0 * v("t", 2);
  const auto r = fraclei::frac_product_series(f, c(3.0), "t", a);
  EXPECT_EQ(r.terms_used, 1);
  expect_poly_near(r.value, 3.0 * fraclei::frac_partial(f, "t", a));
}

TEST(ProductSeries, ConstantFirstFactorIsOffByAlpha) {
  // D^a t = Gamma(2)/Gamma(2-a) t^(1-a); the series with f = 1, h = t gives
  // only the k = 1 fractional integral a * t^(1-a)/Gamma(2-a).
  for (double a : {0.3, 0.5, 0.8}) {
    const auto r = fraclei::frac_product_series(c(1.0), v("t"), "t", FractionalOrder(a));
    const auto direct = fraclei::frac_partial(v("t"), "t", a);
    expect_poly_near(r.value, a * direct, 1e-10);
    // The direct rule is the one the numerical oracle confirms.
    const double t = 0.8;
    EXPECT_NEAR(direct.eval({{"t", t}}), fraclei::power_rule_value(1.0, a, t), 1e-12);
  }
}

TEST(ProductSeries, RejectsFractionalSecondFactor) {
  EXPECT_THROW(fraclei::frac_product_series(v("t"), v("t", 0.5), "t", FractionalOrder(0.5)), fraclei::DomainError);
}

TEST(ProductSeries, TruncationIsReported) {
  const auto r = fraclei::frac_product_series(v("t", 2), v("t", 5), "t", FractionalOrder(0.5), 3);
  EXPECT_TRUE(r.truncated);
}

TEST(ProductSeries, ExactnessProperty) {
  fraclei::gen::Source src(7);
  for (int k = 0; k < 100; ++k) {
    const auto f = fraclei::gen::polynomial(src, {"t", "s"}, 2, {1.0, 1.5, 2.0, 2.5});
    const auto h = fraclei::gen::polynomial(src, {"t", "s"}, 3, {0.0, 1.0, 2.0, 3.0});
    if (!f.depends_on("t")) continue;
    bool every_term_has_t = true;
    for (const auto& [e, _] : f.terms()) every_term_has_t = every_term_has_t && e.count("t");
    if (!every_term_has_t) continue;
    const FractionalOrder a(src.real(0.05, 1.0));
    const auto r = fraclei::frac_product_series(f, h, "t", a);
    EXPECT_FALSE(r.truncated);
    expect_poly_near(r.value, fraclei::frac_partial(f * h, "t", a), 1e-10);
  }
}

TEST(FracPartial, LinearityProperty) {
  fraclei::gen::Source src(11);
  const std::vector<std::string> vars{"x1", "x2", "x3"};
  for (int k = 0; k < 200; ++k) {
    const auto p = fraclei::gen::polynomial(src, vars);
    const auto q = fraclei::gen::polynomial(src, vars);
    const double a = src.integer(-6, 6) / 4.0;
    const double b = src.integer(-6, 6) / 3.0;
    const FractionalOrder al(src.real(0.05, 1.0));
    const auto& axis = src.pick(vars);
    expect_poly_near(fraclei::frac_partial(a * p + b * q, axis, al),
                     a * fraclei::frac_partial(p, axis, al) + b * fraclei::frac_partial(q, axis, al));
  }
}

TEST(FracPartial, ClassicalLimitIsMonotone) {
  fraclei::gen::Source src(3);
  const std::vector<std::string> vars{"x1", "x2"};
  for (int k = 0; k < 50; ++k) {
    const auto p = fraclei::gen::polynomial(src, vars, 3, {0.0, 1.0, 2.0, 3.0});
    const fraclei::Point at{{"x1", src.real(0.5, 2.0)}, {"x2", src.real(0.5, 2.0)}};
    const double classical = fraclei::classical_partial(p, "x1").eval(at);
    double prev = INFINITY;
    for (double a : {0.9, 0.99, 0.999}) {
      const double e = std::abs(fraclei::frac_partial(p, "x1", a).eval(at) - classical);
      if (e > 1e-13) {
        EXPECT_LT(e, prev) << p.to_string();
      }
      prev = e;
    }
  }
}

TEST(FractionalTaylor, PowerOfOrderRoundTrips) {
  const FractionalOrder a(0.4);
  const auto f = v("t", 0.4);
  const auto coeffs = fraclei::fractional_taylor(f, a, 2);
  ASSERT_EQ(coeffs.size(), 3u);
  EXPECT_DOUBLE_EQ(coeffs[0], 0.0);
  EXPECT_NEAR(coeffs[1], oracle::gamma(1.4), 1e-12);
  EXPECT_DOUBLE_EQ(coeffs[2], 0.0);
  expect_poly_near(fraclei::fractional_taylor_sum(coeffs, a, "t"), f);
}

TEST(FractionalTaylor, Constant) {
  const auto coeffs = fraclei::fractional_taylor(c(2.5), FractionalOrder(0.5), 3);
  EXPECT_EQ(coeffs, (std::vector<double>{2.5, 0.0, 0.0, 0.0}));
}

TEST(FractionalTaylor, ScaledDoublePower) {
  const FractionalOrder a(0.3);
  const auto f = 3.0 * v("t", 0.6);
  const auto coeffs = fraclei::fractional_taylor(f, a, 2);
  EXPECT_NEAR(coeffs[2], 3.0 * oracle::gamma(1.6), 1e-11);
  expect_poly_near(fraclei::fractional_taylor_sum(coeffs, a, "t"), f);
}

TEST(FractionalTaylor, RejectsNonMultipleExponents) {
  EXPECT_THROW(fraclei::fractional_taylor(v("t", 0.5), FractionalOrder(0.3), 4), fraclei::DomainError);
}

TEST(Eval, GradientRightHandSideAtOnes) {
  const auto sys = fraclei::find_system("gradient-frac").build({.alpha = 0.5, .extra = {{"k1", 1.0}, {"k2", 1.0}, {"k3", 1.0}}});
  EXPECT_NEAR(fraclei::eval(sys.rhs[0], {{"x1", 1}, {"x2", 1}, {"x3", 1}}), 1.0 / oracle::gamma(1.5), 1e-10);
}
