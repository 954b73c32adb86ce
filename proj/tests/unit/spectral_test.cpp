#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "chemoreact/error.hpp"
#include "chemoreact/spectral.hpp"
#include "support.hpp"

namespace chemoreact {
namespace {

using testing::BandLimited;
constexpr double kPi = std::numbers::pi;

GridSpec unit_box(int n = 32) { return GridSpec{n, 2 * kPi}; }

double max_abs(const ScalarField& f) { return f.max_abs(); }

TEST(GridSpec, RejectsBadSizes) {
  EXPECT_THROW((GridSpec{8, 1.0}.validate()), ConfigError);
  EXPECT_THROW((GridSpec{48, 1.0}.validate()), ConfigError);
  EXPECT_THROW((GridSpec{64, 0.0}.validate()), ConfigError);
  EXPECT_NO_THROW((GridSpec{16, 3.0}.validate()));
}

TEST(GridSpec, WavenumbersCoverSignedModes) {
  const GridSpec g{16, 4.0};
  EXPECT_EQ(g.mode(0), 0);
  EXPECT_EQ(g.mode(7), 7);
  EXPECT_EQ(g.mode(8), -8);
  EXPECT_EQ(g.mode(15), -1);
  EXPECT_DOUBLE_EQ(g.wavenumber(-3), -3 * 2 * kPi / 4.0);
  EXPECT_DOUBLE_EQ(g.spacing(), 0.25);
}

TEST(Gradient, SingleModeIsExact) {
  const auto g = unit_box();
  const auto f = ScalarField::sample(g, [](double x, double) { return std::sin(x); });
  const VectorField d = gradient(f);
  const auto expect = ScalarField::sample(g, [](double x, double) { return std::cos(x); });
  EXPECT_LT(max_abs_difference(d.x, expect), 1e-12);
  EXPECT_LT(max_abs(d.y), 1e-12);
}

TEST(Gradient, ConstantGivesZero) {
  const ScalarField f(unit_box(), 3.7);
  const VectorField d = gradient(f);
  EXPECT_EQ(d.x.max_abs(), 0.0);
  EXPECT_EQ(d.y.max_abs(), 0.0);
}

// Fourth-order centered differences on the same samples: the discrepancy must be O(h^4)
// and shrink by ~16 when the grid is refined.
TEST(Gradient, AgreesWithFourthOrderDifferences) {
  const BandLimited field(7, 3);
  auto fd_error = [&](int n) {
    const GridSpec g = unit_box(n);
    const ScalarField f = field.sample(g);
    const VectorField d = gradient(f);
    const double h = g.spacing();
    double err = 0.0;
    auto w = [n](int i) { return (i + n) % n; };
    for (int ix = 0; ix < n; ++ix) {
      for (int iy = 0; iy < n; ++iy) {
        const double fd = (-f(w(ix + 2), iy) + 8 * f(w(ix + 1), iy) - 8 * f(w(ix - 1), iy) + f(w(ix - 2), iy)) / (12 * h);
        err = std::max(err, std::abs(fd - d.x(ix, iy)));
      }
    }
    return err;
  };
  const double coarse = fd_error(32);
  const double fine = fd_error(64);
  EXPECT_LT(coarse, 0.05);
  EXPECT_NEAR(std::log2(coarse / fine), 4.0, 0.3);
}

TEST(Gradient, MatchesAnalyticDerivativesOfRandomField) {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const BandLimited field(seed, 4, 5.0);
    const GridSpec g{32, 5.0};
    const VectorField d = gradient(field.sample(g));
    const auto ex = ScalarField::sample(g, [&](double x, double y) { return field.dx(x, y); });
    const auto ey = ScalarField::sample(g, [&](double x, double y) { return field.dy(x, y); });
    EXPECT_LT(max_abs_difference(d.x, ex), 1e-11);
    EXPECT_LT(max_abs_difference(d.y, ey), 1e-11);
  }
}

TEST(Divergence, SingleMode) {
  const auto g = unit_box();
  VectorField v{ScalarField::sample(g, [](double x, double) { return std::sin(x); }), ScalarField(g)};
  const auto expect = ScalarField::sample(g, [](double x, double) { return std::cos(x); });
  EXPECT_LT(max_abs_difference(divergence(v), expect), 1e-12);
}

TEST(Divergence, PerpendicularGradientIsFree) {
  const auto g = unit_box();
  const VectorField grad = gradient(BandLimited(3, 5).sample(g));
  VectorField perp{-1.0 * grad.y, grad.x};
  EXPECT_LT(divergence(perp).max_abs(), 1e-12);
}

TEST(Divergence, MeanVanishesForRandomFields) {
  const auto g = unit_box();
  for (unsigned seed = 0; seed < 10; ++seed) {
    VectorField v{BandLimited(seed, 6, 2 * kPi, 1.3).sample(g), BandLimited(seed + 100, 6, 2 * kPi, -0.4).sample(g)};
    EXPECT_LT(std::abs(divergence(v).mean()), 1e-13);
  }
}

TEST(Laplacian, CosineEigenvalue) {
  const auto g = unit_box();
  const auto f = ScalarField::sample(g, [](double x, double) { return std::cos(x); });
  EXPECT_LT(max_abs_difference(laplacian(f), -1.0 * f), 1e-12);
  EXPECT_EQ(laplacian(ScalarField(g, 2.0)).max_abs(), 0.0);
}

TEST(Laplacian, InverseRoundTrip) {
  const auto g = unit_box();
  for (unsigned seed = 0; seed < 10; ++seed) {
    const ScalarField f = BandLimited(seed, 6, 2 * kPi, 0.7).sample(g);
    const ScalarField back = laplacian(inverse_laplacian(f));
    ScalarField centered = f;
    for (double& v : centered.values()) v -= f.mean();
    EXPECT_LT(max_abs_difference(back, centered), 1e-12);
  }
}

TEST(InverseLaplacian, SingleModeAndConstants) {
  const auto g = unit_box();
  const auto f = ScalarField::sample(g, [](double x, double) { return std::cos(x); });
  EXPECT_LT(max_abs_difference(inverse_laplacian(f), -1.0 * f), 1e-12);
  EXPECT_EQ(inverse_laplacian(ScalarField(g, 5.0)).max_abs(), 0.0);
}

TEST(InverseLaplacian, MeanZeroAndRecoversInput) {
  const GridSpec g{64, 7.0};
  for (unsigned seed = 0; seed < 10; ++seed) {
    const ScalarField f = BandLimited(seed, 8, 7.0, 2.5).sample(g);
    const ScalarField c = inverse_laplacian(f);
    EXPECT_LT(std::abs(c.mean()), 1e-13);
    ScalarField rebuilt = laplacian(c);
    for (double& v : rebuilt.values()) v += f.mean();
    EXPECT_LT(max_abs_difference(rebuilt, f), 1e-12 * f.max_abs());
  }
}

TEST(Dealias, CutoffIsTwoThirds) {
  EXPECT_EQ(dealias_cutoff(16), 5);
  EXPECT_EQ(dealias_cutoff(256), 85);
}

TEST(Dealias, KeepsResolvedModesAndRemovesHighOnes) {
  const auto g = unit_box(32);
  const ScalarField low = BandLimited(1, dealias_cutoff(32)).sample(g);
  EXPECT_LT(max_abs_difference(dealias(low), low), 1e-13 * std::max(1.0, low.max_abs()));
  const auto high = ScalarField::sample(g, [](double x, double y) { return std::cos(12 * x) + std::sin(13 * y); });
  EXPECT_LT(dealias(high).max_abs(), 1e-13);
}

TEST(Dealias, Idempotent) {
  const auto g = unit_box(32);
  std::mt19937_64 rng(9);
  std::normal_distribution<double> noise;
  for (int trial = 0; trial < 10; ++trial) {
    ScalarField f(g);
    for (double& v : f.values()) v = noise(rng);
    const ScalarField once = dealias(f);
    const ScalarField twice = dealias(once);
    EXPECT_LT(max_abs_difference(once, twice), 1e-14);
  }
}

TEST(Transforms, RoundTripAndParsevalOnRandomFields) {
  const GridSpec g{64, 3.0};
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> noise;
  for (int trial = 0; trial < 10; ++trial) {
    ScalarField f(g);
    for (double& v : f.values()) v = noise(rng);
    const Spectrum F = forward_transform(f);
    const ScalarField back = inverse_transform(F);
    EXPECT_LT(max_abs_difference(back, f), 1e-12 * f.max_abs());
    double grid_sum = 0.0;
    for (double v : f.values()) grid_sum += v * v;
    const double n2 = static_cast<double>(g.n) * g.n;
    EXPECT_NEAR(spectral_energy(F) / n2, grid_sum, 1e-12 * grid_sum);
  }
}

TEST(Transforms, DivergenceOfGradientIsLaplacian) {
  const auto g = unit_box(32);
  for (unsigned seed = 0; seed < 10; ++seed) {
    const ScalarField f = BandLimited(seed, 7).sample(g);
    const ScalarField lap = laplacian(f);
    EXPECT_LT(max_abs_difference(divergence(gradient(f)), lap), 1e-12 * lap.max_abs());
  }
}

TEST(Transforms, HeatSemigroupDampsModes) {
  const auto g = unit_box(32);
  const auto f = ScalarField::sample(g, [](double x, double y) { return std::cos(2 * x) * std::cos(y); });
  Spectrum F = forward_transform(f);
  fourier::apply_heat_semigroup(F, 0.3);
  EXPECT_LT(max_abs_difference(inverse_transform(F), std::exp(-5 * 0.3) * f), 1e-14);
}

TEST(Transforms, ThreadCountDoesNotChangeResults) {
  const GridSpec g{64, 3.0};
  const ScalarField f = BandLimited(4, 10, 3.0).sample(g);
  set_transform_threads(1);
  const ScalarField a = laplacian(f);
  set_transform_threads(2);
  const ScalarField b = laplacian(f);
  set_transform_threads(1);
  EXPECT_LT(max_abs_difference(a, b), 1e-10 * a.max_abs());
}

}  // namespace
}  // namespace chemoreact
