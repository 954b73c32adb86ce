#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "chemoreact/error.hpp"
#include "chemoreact/model.hpp"
#include "chemoreact/spectral.hpp"
#include "support.hpp"

namespace chemoreact {
namespace {

using testing::BandLimited;
constexpr double kPi = std::numbers::pi;

GridSpec unit_box(int n = 32) { return GridSpec{n, 2 * kPi}; }

TEST(VelocityFromStream, SinSinCell) {
  const auto g = unit_box();
  const auto H = ScalarField::sample(g, [](double x, double y) { return std::sin(x) * std::sin(y); });
  const VectorField u = velocity_from_stream(H);
  const auto ux = ScalarField::sample(g, [](double x, double y) { return -std::sin(x) * std::cos(y); });
  const auto uy = ScalarField::sample(g, [](double x, double y) { return std::cos(x) * std::sin(y); });
  EXPECT_LT(max_abs_difference(u.x, ux), 1e-12);
  EXPECT_LT(max_abs_difference(u.y, uy), 1e-12);
}

TEST(VelocityFromStream, ConstantStreamIsAtRest) {
  const VectorField u = velocity_from_stream(ScalarField(unit_box(), 4.0));
  EXPECT_EQ(u.x.max_abs(), 0.0);
  EXPECT_EQ(u.y.max_abs(), 0.0);
}

TEST(VelocityFromStream, RandomStreamIsDivergenceFree) {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const VectorField u = velocity_from_stream(BandLimited(seed, 9).sample(unit_box(32)));
    EXPECT_LT(divergence(u).max_abs(), 1e-12);
  }
}

TEST(FlowSpec, CellularFlowIsBoundedAndDivergenceFree) {
  const GridSpec g{64, 10.0};
  FlowSpec flow;
  flow.kind = FlowKind::kCellular;
  flow.amplitude = 2.5;
  flow.wavenumber = 3;
  const ScalarField H = flow.stream_function(g);
  EXPECT_NEAR(H.max_abs(), 2.5, 0.05);
  EXPECT_LT(divergence(flow_velocity(flow, g)).max_abs(), 1e-12);
  const double k = 2 * kPi * 3 / 10.0;
  const auto ux = ScalarField::sample(g, [&](double x, double y) { return -2.5 * k * std::sin(k * x) * std::cos(k * y); });
  EXPECT_LT(max_abs_difference(flow_velocity(flow, g).x, ux), 1e-12);
}

TEST(FlowSpec, Validation) {
  const GridSpec g{32, 1.0};
  FlowSpec flow;
  flow.kind = FlowKind::kCellular;
  flow.wavenumber = 11;
  EXPECT_THROW(flow.validate(g), ConfigError);
  flow.wavenumber = 10;
  EXPECT_NO_THROW(flow.validate(g));
  FlowSpec custom;
  custom.kind = FlowKind::kCustom;
  EXPECT_THROW(custom.validate(g), ConfigError);
  EXPECT_EQ(parse_flow_kind("none"), FlowKind::kNone);
  EXPECT_THROW(parse_flow_kind("shear"), ConfigError);
}

TEST(ChemoTerm, ConstantDensityGivesZero) {
  EXPECT_LT(chemo_term(ScalarField(unit_box(), 1.7), 3.0).max_abs(), 1e-14);
}

// rho = 1 + a cos x: lap^{-1} rho = -a cos x, flux rho * (a sin x) = a sin x + (a^2/2) sin 2x,
// divergence a cos x + a^2 cos 2x.
TEST(ChemoTerm, SingleModeSymbolic) {
  const double a = 0.3;
  const auto g = unit_box(16);
  const auto rho = ScalarField::sample(g, [&](double x, double) { return 1 + a * std::cos(x); });
  const auto expect = ScalarField::sample(g, [&](double x, double) { return a * std::cos(x) + a * a * std::cos(2 * x); });
  EXPECT_LT(max_abs_difference(chemo_term(rho, 1.0), expect), 1e-14);
}

TEST(ChemoTerm, InducedVelocityPointsToBump) {
  const GridSpec g{64, 16.0};
  const ScalarField rho = testing::gaussian_field(g, 0.8);
  const double chi = 5.0;
  const VectorField grad_c = gradient(inverse_laplacian(rho));
  int checked = 0;
  for (int ix = 0; ix < g.n; ++ix) {
    for (int iy = 0; iy < g.n; ++iy) {
      const double dx = g.coordinate(ix) - 8.0, dy = g.coordinate(iy) - 8.0;
      const double r = std::hypot(dx, dy);
      if (r < 1.0 || r > 4.0) continue;
      const double radial = -chi * (grad_c.x(ix, iy) * dx + grad_c.y(ix, iy) * dy) / r;
      EXPECT_LT(radial, 0.0);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(ChemoTerm, LinearInChiAndMassNeutral) {
  const GridSpec g{32, 6.0};
  ScalarField rho = BandLimited(5, 4, 6.0, 4.0).sample(g);
  const ScalarField one = chemo_term(rho, 1.5);
  const ScalarField two = chemo_term(rho, 3.0);
  EXPECT_LT(max_abs_difference(two, 2.0 * one), 1e-12 * one.max_abs());
  EXPECT_LT(std::abs(one.integral()), 1e-12 * rho.integral());
}

TEST(ChemoTerm, AggregationRaisesThePeak) {
  const GridSpec g{64, 16.0};
  const ScalarField rho = testing::gaussian_field(g, 1.0);
  ModelParams p;
  p.chi = 2.0;
  const Tendency tend = assemble_rhs(rho, p, FlowSpec{}, false);
  EXPECT_GT(tend.value(g.n / 2, g.n / 2), 0.0);
  double weighted = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) weighted += rho[i] * tend.value[i];
  EXPECT_GT(weighted, 0.0);
}

TEST(ReactionTerm, Examples) {
  const auto g = unit_box(16);
  const ScalarField two(g, 2.0);
  EXPECT_LT(max_abs_difference(reaction_term(two, 0.5, 2.0), ScalarField(g, -2.0)), 1e-15);
  EXPECT_EQ(reaction_term(two, 0.0, 2.0).max_abs(), 0.0);
}

TEST(ReactionTerm, IntegralMatchesL2Quadrature) {
  const GridSpec g{64, 5.0};
  for (unsigned seed = 0; seed < 5; ++seed) {
    const ScalarField rho = BandLimited(seed, 4, 5.0, 40.0).sample(g);
    ASSERT_GT(rho.min(), 0.0);
    double l2 = 0.0;
    for (double v : rho.values()) l2 += v * v;
    l2 *= g.cell_area();
    const double eps = 0.7;
    EXPECT_NEAR(reaction_term(rho, eps, 2.0).integral(), -eps * l2, 1e-10 * eps * l2);
  }
}

TEST(ReactionTerm, LinearInEpsilon) {
  const GridSpec g{32, 5.0};
  const ScalarField rho = BandLimited(2, 3, 5.0, 30.0).sample(g);
  EXPECT_LT(max_abs_difference(reaction_term(rho, 0.6, 2.0), 2.0 * reaction_term(rho, 0.3, 2.0)), 1e-12 * 900);
}

TEST(ReactionTerm, RejectsNegativeDensity) {
  ScalarField rho(unit_box(16), 1.0);
  rho(3, 4) = -1e-3;
  EXPECT_THROW(reaction_term(rho, 1.0, 2.0), InvalidStateError);
  rho(3, 4) = -1e-9;
  EXPECT_NO_THROW(reaction_term(rho, 1.0, 2.0));
}

TEST(ReactionTerm, NonIntegerPowerClampsNegatives) {
  ScalarField rho(unit_box(16), 4.0);
  rho(0, 0) = -1e-9;
  const ScalarField r = reaction_term(rho, 1.0, 1.5);
  EXPECT_DOUBLE_EQ(r(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(r(1, 1), -8.0);
}

TEST(AssembleRhs, UniformDensityDecaysLogistically) {
  const GridSpec g{16, 3.0};
  ModelParams p;
  p.epsilon = 0.25;
  p.chi = 4.0;
  const Tendency t = assemble_rhs(ScalarField(g, 2.0), p, FlowSpec{}, true);
  EXPECT_TRUE(t.includes_diffusion);
  EXPECT_LT(max_abs_difference(t.value, ScalarField(g, -1.0)), 1e-14);
}

TEST(AssembleRhs, HeatEigenmode) {
  const auto g = unit_box(16);
  const auto rho = ScalarField::sample(g, [](double x, double) { return 2 + std::cos(x); });
  const auto mode = ScalarField::sample(g, [](double x, double) { return std::cos(x); });
  const Tendency t = assemble_rhs(rho, ModelParams{}, FlowSpec{}, true);
  EXPECT_LT(max_abs_difference(t.value, -1.0 * mode), 1e-14);
}

TEST(AssembleRhs, EqualsSumOfTerms) {
  const GridSpec g{32, 2 * kPi};
  const auto rho = ScalarField::sample(g, [](double x, double y) { return 2 + 0.5 * std::cos(x) * std::sin(2 * y); });
  ModelParams p;
  p.chi = 1.3;
  p.epsilon = 0.4;
  FlowSpec flow;
  flow.kind = FlowKind::kCellular;
  flow.amplitude = 1.0;
  flow.wavenumber = 1;
  const Tendency t = assemble_rhs(rho, p, flow, true);
  const ScalarField sum =
      laplacian(rho) + advection_term(rho, flow_velocity(flow, g)) + chemo_term(rho, p.chi) + reaction_term(rho, p.epsilon, 2.0);
  EXPECT_LT(max_abs_difference(t.value, sum), 1e-13 * std::max(1.0, sum.max_abs()));
}

TEST(AssembleRhs, ConservativeWithoutReaction) {
  const GridSpec g{64, 10.0};
  ModelParams p;
  p.chi = 3.0;
  FlowSpec flow;
  flow.kind = FlowKind::kCellular;
  flow.amplitude = 1.0;
  flow.wavenumber = 2;
  for (unsigned seed = 0; seed < 5; ++seed) {
    const ScalarField rho = BandLimited(seed, 6, 10.0, 100.0).sample(g);
    ASSERT_GT(rho.min(), 0.0);
    const Tendency t = assemble_rhs(rho, p, flow, false);
    EXPECT_FALSE(t.includes_diffusion);
    EXPECT_LT(std::abs(t.value.mean()), 1e-12 * t.value.max_abs());
  }
}

TEST(RhsEvaluator, FusedFluxMatchesSeparateTerms) {
  const GridSpec g{64, 8.0};
  const ScalarField rho = testing::gaussian_field(g, 0.9);
  ModelParams p;
  p.chi = 2.0;
  p.epsilon = 0.5;
  FlowSpec flow;
  flow.kind = FlowKind::kCellular;
  flow.amplitude = 0.7;
  flow.wavenumber = 2;
  const RhsEvaluator rhs(g, p, flow, 1e-6);
  StageInfo info;
  const ScalarField fused = inverse_transform(rhs.nonlinear(forward_transform(rho), rho, 0.0, &info));
  const ScalarField separate = assemble_rhs(rho, p, flow, false).value;
  EXPECT_LT(max_abs_difference(fused, separate), 1e-12 * separate.max_abs());
  EXPECT_DOUBLE_EQ(info.max_density, rho.max());
  EXPECT_GT(info.max_transport_speed, 0.0);
}

}  // namespace
}  // namespace chemoreact
