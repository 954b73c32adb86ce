#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "chemoreact/diagnostics.hpp"
#include "chemoreact/error.hpp"
#include "chemoreact/integrator.hpp"
#include "chemoreact/spectral.hpp"
#include "support.hpp"

namespace chemoreact {
namespace {

constexpr double kPi = std::numbers::pi;

RunState advance_to(RunState state, const Integrator& integrator, double t_end) {
  while (state.t < t_end) {
    const double remaining = t_end - state.t;
    const double dt = integrator.advance(state, remaining);
    if (dt >= remaining) state.t = t_end;
  }
  return state;
}

TEST(StepperConfig, Validation) {
  StepperConfig c;
  EXPECT_NO_THROW(c.validate());
  c.cfl = 1.5;
  EXPECT_THROW(c.validate(), ConfigError);
  c = {};
  c.tol_pos = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_EQ(parse_scheme("if_rk4"), Scheme::kIfRk4);
  EXPECT_THROW(parse_scheme("euler"), ConfigError);
}

TEST(ComputeDt, PureDiffusionUsesCap) {
  const GridSpec g{32, 8.0};
  StepperConfig c;
  c.dt_max = 0.037;
  const RunState s = RunState::initial(testing::gaussian_field(g, 1.0));
  EXPECT_DOUBLE_EQ(compute_dt(s, ModelParams{}, FlowSpec{}, c), 0.037);
}

TEST(ComputeDt, DoublingChiAtMostHalvesStep) {
  const GridSpec g{64, 16.0};
  StepperConfig c;
  c.dt_max = 1.0;
  const RunState s = RunState::initial(testing::gaussian_field(g, 0.5));
  ModelParams p;
  p.chi = 10.0;
  const double a = compute_dt(s, p, FlowSpec{}, c);
  p.chi = 20.0;
  const double b = compute_dt(s, p, FlowSpec{}, c);
  EXPECT_LE(b, a);
  EXPECT_GE(b, 0.5 * a * (1 - 1e-12));
}

// Unit Gaussian on a square torus: |grad lap^{-1} rho|(r) = M(r) / (2 pi r) - r / (2 L^2) near the
// center, where M is the enclosed mass and the second term comes from the removed mean.
TEST(ComputeDt, MatchesHandEvaluatedChemotacticSpeed) {
  const GridSpec g{256, 16.0};
  const double sigma = 0.5, chi = 50.0;
  double peak = 0.0;
  for (int ix = 0; ix < g.n; ++ix) {
    for (int iy = 0; iy < g.n; ++iy) {
      const double r = std::hypot(g.coordinate(ix) - 8.0, g.coordinate(iy) - 8.0);
      if (r == 0.0 || r > 4.0) continue;
      const double enclosed = 1 - std::exp(-r * r / (2 * sigma * sigma));
      peak = std::max(peak, enclosed / (2 * kPi * r) - r / (2 * g.L * g.L));
    }
  }
  StepperConfig c;
  c.dt_max = 1.0;
  ModelParams p;
  p.chi = chi;
  const RunState s = RunState::initial(testing::gaussian_field(g, sigma));
  const double expected = c.cfl * g.spacing() / (chi * peak);
  EXPECT_NEAR(compute_dt(s, p, FlowSpec{}, c), expected, 0.01 * expected);
}

TEST(ComputeDt, ReactionLimit) {
  const GridSpec g{16, 4.0};
  StepperConfig c;
  c.dt_max = 10.0;
  ModelParams p;
  p.epsilon = 2.0;
  const RunState s = RunState::initial(ScalarField(g, 5.0));
  EXPECT_NEAR(compute_dt(s, p, FlowSpec{}, c), c.cfl / (2.0 * 2.0 * 5.0), 1e-9);
}

TEST(Step, HeatKernelOracle) {
  const GridSpec g{128, 16.0};
  const double sigma = 0.5, t_end = 1.0;
  StepperConfig c;
  c.t_end = t_end;
  const Integrator integrator(g, ModelParams{}, FlowSpec{}, c, 1.0);
  const RunState s = advance_to(RunState::initial(testing::gaussian_field(g, sigma)), integrator, t_end);
  const ScalarField exact = testing::gaussian_field(g, std::sqrt(sigma * sigma + 2 * t_end));
  EXPECT_LT(max_abs_difference(s.rho, exact) / exact.max(), 1e-6);
}

TEST(Step, UniformDensityTracksLogisticOde) {
  const GridSpec g{16, 2.0};
  const double rho0 = 2.0, eps = 0.5;
  ModelParams p;
  p.epsilon = eps;
  for (Scheme scheme : {Scheme::kIfHeun, Scheme::kIfRk4}) {
    StepperConfig c;
    c.scheme = scheme;
    c.dt_max = scheme == Scheme::kIfRk4 ? 1e-2 : 1e-4;
    const Integrator integrator(g, p, FlowSpec{}, c, rho0);
    const RunState s = advance_to(RunState::initial(ScalarField(g, rho0)), integrator, 1.0);
    const double exact = rho0 / (1 + eps * rho0);
    EXPECT_LT(std::abs(s.rho.max() - exact) / exact, 1e-8) << to_string(scheme);
    EXPECT_LT(s.rho.max() - s.rho.min(), 1e-13);
  }
}

TEST(Step, SingleStepConservesMassWithoutReaction) {
  const GridSpec g{64, 12.0};
  ModelParams p;
  p.chi = 4.0;
  FlowSpec flow;
  flow.kind = FlowKind::kCellular;
  flow.amplitude = 1.0;
  flow.wavenumber = 2;
  StepperConfig c;
  RunState s = RunState::initial(testing::gaussian_field(g, 1.0));
  const double m = mass(s.rho);
  for (Scheme scheme : {Scheme::kIfHeun, Scheme::kIfRk4}) {
    c.scheme = scheme;
    const RunState next = step(s, p, flow, c);
    EXPECT_LT(std::abs(mass(next.rho) - m), 1e-12 * m);
    EXPECT_GT(next.t, 0.0);
    EXPECT_EQ(next.step_count, 1);
  }
}

// Self-convergence on a smooth chemotactic run with fixed steps: error ratios give the order.
TEST(Step, TemporalOrder) {
  const GridSpec g{32, 10.0};
  ModelParams p;
  p.chi = 2.0;
  p.epsilon = 1.0;
  auto final_field = [&](Scheme scheme, double dt) {
    StepperConfig c;
    c.scheme = scheme;
    c.dt_max = dt;
    c.cfl = 1.0;
    const Integrator integrator(g, p, FlowSpec{}, c, 1.0);
    return advance_to(RunState::initial(testing::gaussian_field(g, 1.5)), integrator, 0.4).rho;
  };
  for (auto [scheme, order] : {std::pair{Scheme::kIfHeun, 2.0}, std::pair{Scheme::kIfRk4, 4.0}}) {
    const ScalarField a = final_field(scheme, 0.04);
    const ScalarField b = final_field(scheme, 0.02);
    const ScalarField c = final_field(scheme, 0.01);
    const double observed = std::log2(max_abs_difference(a, b) / max_abs_difference(b, c));
    EXPECT_GT(observed, order - 0.3) << to_string(scheme);
  }
}

TEST(Step, NegativityAbortsAsInvalidState) {
  const GridSpec g{32, 4.0};
  ScalarField rho(g, 1.0);
  rho(0, 0) = -0.5;
  StepperConfig c;
  const Integrator integrator(g, ModelParams{}, FlowSpec{}, c, 1.0);
  RunState s = RunState::initial(rho);
  EXPECT_THROW(integrator.advance(s), InvalidStateError);
}

TEST(Step, NonFiniteDensityIsBlowUp) {
  const GridSpec g{16, 4.0};
  ScalarField rho(g, 1.0);
  rho(2, 2) = std::numeric_limits<double>::infinity();
  StepperConfig c;
  c.tol_pos = 1e300;
  const Integrator integrator(g, ModelParams{}, FlowSpec{}, c, 1.0);
  RunState s = RunState::initial(rho);
  EXPECT_THROW(integrator.advance(s), BlowUpError);
}

TEST(Step, TinyStepsCollapse) {
  const GridSpec g{16, 4.0};
  ModelParams p;
  p.epsilon = 1.0;
  StepperConfig c;
  c.t_end = 1.0;
  const RunState s = RunState::initial(ScalarField(g, 1e14));
  EXPECT_THROW(compute_dt(s, p, FlowSpec{}, c), StepCollapseError);
}

}  // namespace
}  // namespace chemoreact
