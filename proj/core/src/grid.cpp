#include "chemoreact/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "chemoreact/error.hpp"

namespace chemoreact {

void GridSpec::validate() const {
  if (n < 16 || (n & (n - 1)) != 0) {
    throw ConfigError("grid.n must be a power of two >= 16, got " + std::to_string(n));
  }
  if (!(L > 0.0) || !std::isfinite(L)) {
    throw ConfigError("grid.L must be positive and finite");
  }
}

double GridSpec::wavenumber(int mode_index) const {
  return 2.0 * std::numbers::pi * mode_index / L;
}

ScalarField::ScalarField(GridSpec grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

ScalarField::ScalarField(GridSpec grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw Error("ScalarField: value count does not match grid");
  }
}

double ScalarField::integral() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) * grid_.cell_area();
}

double ScalarField::mean() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }
double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double factor) {
  for (double& v : values_) v *= factor;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double factor, ScalarField a) { return a *= factor; }

ScalarField hadamard(const ScalarField& a, const ScalarField& b) {
  ScalarField out(a.grid());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

double max_abs_difference(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace chemoreact
