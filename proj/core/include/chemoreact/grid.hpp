#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace chemoreact {

/// Uniform periodic grid on the square box [0, L)^2 with n points per side.
struct GridSpec {
  int n = 0;
  double L = 0.0;

  /// Throws ConfigError unless n >= 16 is a power of two and L > 0.
  void validate() const;

  double spacing() const { return L / n; }
  double cell_area() const { return spacing() * spacing(); }
  std::size_t size() const { return static_cast<std::size_t>(n) * static_cast<std::size_t>(n); }

  /// Signed integer mode for FFT bin `index` in [0, n): 0..n/2-1, then -n/2..-1.
  int mode(int index) const { return index < n / 2 ? index : index - n; }
  /// Physical wavenumber 2*pi*j/L of signed mode j.
  double wavenumber(int mode_index) const;
  /// Coordinate of grid node `index` along either axis.
  double coordinate(int index) const { return index * spacing(); }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Real samples on a GridSpec, stored row-major: value(ix, iy) = values[ix * n + iy].
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(GridSpec grid, double fill = 0.0);
  ScalarField(GridSpec grid, std::vector<double> values);

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  double& operator()(int ix, int iy) { return values_[index(ix, iy)]; }
  double operator()(int ix, int iy) const { return values_[index(ix, iy)]; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  /// Sum of samples times the cell area: the periodic-box integral.
  double integral() const;
  double mean() const;
  double max() const;
  double min() const;
  double max_abs() const;
  bool all_finite() const;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double factor);

  /// Fills the field by sampling f(x, y) at the grid nodes.
  template <typename Fn>
  static ScalarField sample(const GridSpec& grid, Fn&& f) {
    ScalarField out(grid);
    for (int ix = 0; ix < grid.n; ++ix) {
      for (int iy = 0; iy < grid.n; ++iy) {
        out(ix, iy) = f(grid.coordinate(ix), grid.coordinate(iy));
      }
    }
    return out;
  }

 private:
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(ix) * static_cast<std::size_t>(grid_.n) + static_cast<std::size_t>(iy);
  }

  GridSpec grid_{};
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double factor, ScalarField a);
/// Pointwise product.
ScalarField hadamard(const ScalarField& a, const ScalarField& b);
/// Largest pointwise |a - b|.
double max_abs_difference(const ScalarField& a, const ScalarField& b);

/// Two scalar components on a shared grid.
struct VectorField {
  ScalarField x;
  ScalarField y;

  const GridSpec& grid() const { return x.grid(); }
};

}  // namespace chemoreact
