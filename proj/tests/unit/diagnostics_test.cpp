#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "chemoreact/diagnostics.hpp"
#include "chemoreact/error.hpp"
#include "support.hpp"

namespace chemoreact {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Mass, UniformAndGaussian) {
  EXPECT_NEAR(mass(ScalarField(GridSpec{32, 4.0}, 2.5)), 40.0, 1e-12);
  EXPECT_NEAR(mass(testing::gaussian_field(GridSpec{128, 16.0}, 0.7, 3.0)), 3.0, 1e-12);
}

TEST(SecondMoment, GaussianIsTwiceTheVariance) {
  const GridSpec g{128, 16.0};
  for (double sigma : {0.5, 1.0, 1.5}) {
    EXPECT_NEAR(second_moment(testing::gaussian_field(g, sigma)), 2 * sigma * sigma, 1e-6 * sigma * sigma);
  }
}

TEST(SecondMoment, TranslationInvariantAcrossTheSeam) {
  const GridSpec g{128, 16.0};
  const double var = 0.64;
  const auto centered = testing::gaussian_field(g, 0.8);
  const auto wrapped = ScalarField::sample(
      g, [&](double x, double y) { return testing::periodic_gaussian(x, y, g.L, 0.3, 15.9, var); });
  EXPECT_NEAR(second_moment(wrapped), second_moment(centered), 1e-9);
  const Centroid c = torus_centroid(wrapped);
  EXPECT_NEAR(c.x, 0.3, 1e-9);
  EXPECT_NEAR(c.y, 15.9, 1e-9);
}

TEST(SecondMoment, UniformDensityIsDelocalized) {
  EXPECT_THROW(second_moment(ScalarField(GridSpec{32, 4.0}, 1.0)), DelocalizedStateError);
  const DiagnosticsRecord r = make_record(ScalarField(GridSpec{32, 4.0}, 1.0), 0.0, 2.0, 0.0);
  EXPECT_TRUE(std::isnan(r.m2));
  EXPECT_FALSE(r.valid);
}

TEST(Norms, CosineMode) {
  const GridSpec g{32, 2 * kPi};
  const auto f = ScalarField::sample(g, [](double x, double) { return std::cos(x); });
  const Norms nm = norms(f, 2.0);
  EXPECT_NEAR(nm.l2sq, 2 * kPi * kPi, 1e-12);
  EXPECT_NEAR(nm.linf, 1.0, 1e-15);
  EXPECT_NEAR(nm.hs, kPi * std::sqrt(2.0), 1e-12);
  // Order 1 weights |k|^2 once; a mode-3 cosine picks up a factor 3.
  const auto f3 = ScalarField::sample(g, [](double x, double) { return std::cos(3 * x); });
  EXPECT_NEAR(norms(f3, 1.0).hs, 3 * kPi * std::sqrt(2.0), 1e-11);
}

TEST(Norms, GaussianL2AndArea) {
  const GridSpec g{128, 16.0};
  const double sigma = 0.8;
  const auto rho = testing::gaussian_field(g, sigma);
  const Norms nm = norms(rho);
  EXPECT_NEAR(nm.l2sq, 1.0 / (4 * kPi * sigma * sigma), 1e-10);
  EXPECT_NEAR(nm.linf, 1.0 / (2 * kPi * sigma * sigma), 1e-10);
  EXPECT_NEAR(interaction_area(1.0, nm.l2sq), 4 * kPi * sigma * sigma, 1e-8);
  EXPECT_TRUE(std::isinf(interaction_area(1.0, 0.0)));
}

TEST(BalanceResidual, TrapezoidOfLogisticSeries) {
  // Uniform logistic decay on a unit-area box: m0 = 1/(1+t), l2sq = m0^2.
  TimeSeries s;
  for (int k = 0; k <= 2000; ++k) {
    DiagnosticsRecord r;
    r.t = 0.001 * k;
    r.m0 = 1.0 / (1.0 + r.t);
    r.l2sq = r.m0 * r.m0;
    s.records.push_back(r);
  }
  const auto res = balance_residual(s, 1.0);
  ASSERT_EQ(res.size(), s.records.size());
  EXPECT_EQ(res.front(), 0.0);
  EXPECT_LT(res.back(), 1e-6);
  EXPECT_GT(balance_residual(s, 0.5).back(), 0.1);
}

TEST(BoundaryMass, CenteredBumpIsValidEdgeMassIsNot) {
  const GridSpec g{64, 16.0};
  const auto inside = testing::gaussian_field(g, 0.8);
  EXPECT_LT(boundary_mass_fraction(inside), kBoundaryMassTolerance);
  EXPECT_TRUE(make_record(inside, 0.0, 2.0, 0.0).valid);
  const auto edge = ScalarField::sample(
      g, [&](double x, double y) { return testing::periodic_gaussian(x, y, g.L, 0.0, 8.0, 0.64); });
  EXPECT_GT(boundary_mass_fraction(edge), 0.01);
  EXPECT_FALSE(make_record(edge, 0.0, 2.0, 0.0).valid);
}

TEST(MakeRecord, FillsEveryColumn) {
  const GridSpec g{64, 16.0};
  const auto rho = testing::gaussian_field(g, 1.0, 2.0);
  const DiagnosticsRecord r = make_record(rho, 0.25, 2.0, 1e-9);
  EXPECT_DOUBLE_EQ(r.t, 0.25);
  EXPECT_NEAR(r.m0, 2.0, 1e-12);
  EXPECT_NEAR(r.m2, 4.0, 1e-8);
  EXPECT_DOUBLE_EQ(r.min_val, rho.min());
  EXPECT_DOUBLE_EQ(r.area, interaction_area(r.m0, r.l2sq));
  EXPECT_DOUBLE_EQ(r.balance_residual, 1e-9);
}

TEST(WeightedMomentNorm, OrderZeroIsMassPlusTwiceGradient) {
  const GridSpec g{128, 16.0};
  const double sigma = 1.0;
  const auto rho = testing::gaussian_field(g, sigma);
  // int |grad G| = int r/sigma^2 G = sqrt(pi/2) / sigma for the unit Gaussian G.
  const double expected = 2 * (1.0 + std::sqrt(kPi / 2) / sigma);
  // |grad rho| has a cone at the peak, so the rectangle rule is only second order here.
  EXPECT_NEAR(weighted_moment_norm(rho, 0), expected, 1e-3);
}

}  // namespace
}  // namespace chemoreact
