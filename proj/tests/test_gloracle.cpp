#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "fraclei/gloracle.hpp"
#include "fraclei/verify.hpp"
#include "oracles.hpp"

namespace gl = fraclei::gl;
using fraclei::FractionalOrder;

TEST(GlWeights, FirstDifferenceAtOrderOne) {
  EXPECT_EQ(gl::gl_weights(1.0, 4), (std::vector<double>{1.0, -1.0, 0.0, 0.0}));
}

TEST(GlWeights, HalfOrderValues) {
  const auto w = gl::gl_weights(0.5, 3);
  EXPECT_DOUBLE_EQ(w[1], -0.5);
  EXPECT_DOUBLE_EQ(w[2], -0.125);
}

TEST(GlWeights, MatchSignedBinomials) {
  const auto w = gl::gl_weights(0.37, 30);
  for (unsigned k = 0; k < 30; ++k)
    EXPECT_NEAR(w[k], (k % 2 ? -1.0 : 1.0) * fraclei::gen_binomial(0.37, k), 1e-15);
}

TEST(GlDerivative, ConstantGivesZero) {
  const auto g = gl::Grid1D::over(1.0, 0.01);
  const auto d = gl::gl_frac_derivative(gl::SampledFunction::sample(g, [](double) { return 3.5; }), FractionalOrder(0.4));
  for (double x : d.values) EXPECT_EQ(x, 0.0);
}

TEST(GlDerivative, SquareAtHalfOrder) {
  const auto g = gl::Grid1D::over(1.0, 1e-3);
  const auto d = gl::gl_frac_derivative(gl::SampledFunction::sample(g, [](double t) { return t * t; }),
                                        FractionalOrder(0.5));
  const double k = oracle::gamma(3.0) / oracle::gamma(2.5);
  EXPECT_LE(gl::max_relative_error(d, [k](double t) { return k * std::pow(t, 1.5); }, 0.5), 1e-2);
}

TEST(GlDerivative, SquareAtOrderOneIsBackwardDifference) {
  const double h = 1e-3;
  const auto g = gl::Grid1D::over(1.0, h);
  const auto d = gl::gl_frac_derivative(gl::SampledFunction::sample(g, [](double t) { return t * t; }),
                                        FractionalOrder(1.0));
  EXPECT_LE(gl::max_absolute_error(d, [](double t) { return 2 * t; }, h), 2 * h);
}

TEST(GlDerivative, PowerRuleAgreementAllPairs) {
  for (double gexp : {0.5, 1.0, 2.0, 2.5})
    for (double a : {0.3, 0.5, 0.8}) {
      const auto g = gl::Grid1D::over(1.0, 1e-3);
      const auto d = gl::gl_frac_derivative(gl::SampledFunction::sample(g, [gexp](double t) { return std::pow(t, gexp); }),
                                            FractionalOrder(a));
      const double k = oracle::power_coefficient(gexp, a);
      const double err = gl::max_relative_error(d, [&](double t) { return k * std::pow(t, gexp - a); }, 0.5);
      EXPECT_LE(err, 1e-2) << "gamma=" << gexp << " alpha=" << a;
    }
}

TEST(GlDerivative, RefinementReducesError) {
  for (double gexp : {0.5, 1.0, 2.0, 2.5})
    for (double a : {0.3, 0.5, 0.8}) {
      double prev = INFINITY;
      for (double h : {4e-3, 2e-3, 1e-3}) {
        const double e = fraclei::power_rule_vs_gl(gexp, a, h);
        EXPECT_LT(e, prev) << "gamma=" << gexp << " alpha=" << a << " h=" << h;
        prev = e;
      }
    }
}

TEST(GlDerivative, LinearAndShiftInvariant) {
  const auto g = gl::Grid1D::over(1.0, 1e-2);
  const auto f = gl::SampledFunction::sample(g, [](double t) { return std::sin(3 * t); });
  const auto h = gl::SampledFunction::sample(g, [](double t) { return t * t * t; });
  const auto comb = gl::SampledFunction::sample(g, [](double t) { return 2 * std::sin(3 * t) - 0.5 * t * t * t; });
  const auto shifted = gl::SampledFunction::sample(g, [](double t) { return std::sin(3 * t) + 10.0; });
  const FractionalOrder a(0.6);
  const auto df = gl::gl_frac_derivative(f, a), dh = gl::gl_frac_derivative(h, a);
  const auto dc = gl::gl_frac_derivative(comb, a), ds = gl::gl_frac_derivative(shifted, a);
  for (std::size_t k = 0; k < g.count; ++k) {
    EXPECT_NEAR(dc.values[k], 2 * df.values[k] - 0.5 * dh.values[k], 1e-12);
    EXPECT_NEAR(ds.values[k], df.values[k], 1e-11);
  }
}

TEST(GlDerivative, MatchesFrozenHighPrecisionFixture) {
  std::ifstream in(FRACLEI_FIXTURE_DIR "/gl_sin_plus_t15_alpha06.csv");
  ASSERT_TRUE(in) << "missing fixture";
  const auto expect = gl::read_csv(in);
  const auto f = gl::SampledFunction::sample(expect.grid, [](double t) { return std::sin(t) + std::pow(t, 1.5); });
  const auto d = gl::gl_frac_derivative(f, FractionalOrder(0.6));
  for (std::size_t k = 0; k < expect.values.size(); ++k)
    EXPECT_NEAR(d.values[k], expect.values[k], 1e-12 * (1 + std::abs(expect.values[k]))) << "k=" << k;
}

TEST(GlCsv, RoundTrip) {
  const auto g = gl::Grid1D::over(0.5, 0.05);
  const auto f = gl::SampledFunction::sample(g, [](double t) { return std::exp(-t) / 3; });
  std::stringstream ss;
  gl::write_csv(f, ss);
  const auto back = gl::read_csv(ss);
  EXPECT_EQ(back.values, f.values);
  EXPECT_EQ(back.grid.count, g.count);
}

TEST(GlCsv, RejectsMalformedInput) {
  std::stringstream bad_header("x,y\n0,1\n1,2\n");
  EXPECT_THROW(gl::read_csv(bad_header), fraclei::DomainError);
  std::stringstream uneven("t,value\n0,1\n0.1,2\n0.3,3\n");
  EXPECT_THROW(gl::read_csv(uneven), fraclei::DomainError);
}

TEST(Grid, Validation) {
  EXPECT_THROW(gl::Grid1D(0.0, 10), fraclei::DomainError);
  EXPECT_THROW(gl::Grid1D(0.1, 1), fraclei::DomainError);
  EXPECT_EQ(gl::Grid1D::over(1.0, 1e-3).count, 1001u);
  EXPECT_THROW(gl::SampledFunction(gl::Grid1D(0.1, 2), {1.0, NAN}), fraclei::DomainError);
}
