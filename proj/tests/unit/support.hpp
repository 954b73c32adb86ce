#pragma once

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "chemoreact/grid.hpp"

namespace chemoreact::testing {

/// Random trigonometric polynomial with integer modes |jx|, |jy| <= max_mode on the box [0, L)^2.
/// Evaluated analytically, so the same field can be sampled on several grids.
struct BandLimited {
  struct Term {
    int jx, jy;
    double a, b;
  };
  double L = 2 * std::numbers::pi;
  double offset = 0.0;
  std::vector<Term> terms;

  BandLimited(unsigned seed, int max_mode, double box = 2 * std::numbers::pi, double mean = 0.0) : L(box), offset(mean) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int jx = 0; jx <= max_mode; ++jx) {
      for (int jy = -max_mode; jy <= max_mode; ++jy) {
        if (jx == 0 && jy <= 0) continue;
        terms.push_back({jx, jy, u(rng), u(rng)});
      }
    }
  }

  double k() const { return 2 * std::numbers::pi / L; }

  double operator()(double x, double y) const {
    double s = offset;
    for (const auto& t : terms) {
      const double ph = k() * (t.jx * x + t.jy * y);
      s += t.a * std::cos(ph) + t.b * std::sin(ph);
    }
    return s;
  }
  double dx(double x, double y) const {
    double s = 0.0;
    for (const auto& t : terms) {
      const double ph = k() * (t.jx * x + t.jy * y);
      s += k() * t.jx * (-t.a * std::sin(ph) + t.b * std::cos(ph));
    }
    return s;
  }
  double dy(double x, double y) const {
    double s = 0.0;
    for (const auto& t : terms) {
      const double ph = k() * (t.jx * x + t.jy * y);
      s += k() * t.jy * (-t.a * std::sin(ph) + t.b * std::cos(ph));
    }
    return s;
  }

  ScalarField sample(const GridSpec& g) const {
    return ScalarField::sample(g, [this](double x, double y) { return (*this)(x, y); });
  }
};

/// Periodized isotropic Gaussian of mass m and per-axis variance var centered at (cx, cy).
inline double periodic_gaussian(double x, double y, double L, double cx, double cy, double var, double m = 1.0,
                                int images = 3) {
  double s = 0.0;
  for (int i = -images; i <= images; ++i) {
    for (int j = -images; j <= images; ++j) {
      const double dx = x - cx - i * L, dy = y - cy - j * L;
      s += std::exp(-(dx * dx + dy * dy) / (2 * var));
    }
  }
  return m * s / (2 * std::numbers::pi * var);
}

inline ScalarField gaussian_field(const GridSpec& g, double sigma, double m = 1.0) {
  return ScalarField::sample(
      g, [&](double x, double y) { return periodic_gaussian(x, y, g.L, g.L / 2, g.L / 2, sigma * sigma, m); });
}

/// Fresh directory under the system temp dir, removed on destruction.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string& name) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("chemoreact_" + name + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~ScratchDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& leaf) const { return path_ / leaf; }

 private:
  std::filesystem::path path_;
};

}  // namespace chemoreact::testing
