#pragma once

#include <complex>
#include <span>
#include <vector>

#include "chemoreact/grid.hpp"

namespace chemoreact {

/// Half-complex spectrum of a real field: n rows (x modes) by n/2 + 1 columns (y modes).
///
/// Normalization is fixed once for the whole library: the forward transform is
/// unnormalized, the inverse divides by n^2. Under this convention
/// sum |f|^2 = (1/n^2) * sum over the full spectrum of |F|^2.
class Spectrum {
 public:
  using value_type = std::complex<double>;

  Spectrum() = default;
  explicit Spectrum(GridSpec grid);

  const GridSpec& grid() const { return grid_; }
  int rows() const { return grid_.n; }
  int cols() const { return grid_.n / 2 + 1; }

  value_type& operator()(int a, int b) { return coeffs_[static_cast<std::size_t>(a) * cols() + b]; }
  const value_type& operator()(int a, int b) const { return coeffs_[static_cast<std::size_t>(a) * cols() + b]; }

  std::span<value_type> coefficients() { return coeffs_; }
  std::span<const value_type> coefficients() const { return coeffs_; }

  /// Physical wavenumbers of row a and column b.
  double kx(int a) const { return grid_.wavenumber(grid_.mode(a)); }
  double ky(int b) const { return grid_.wavenumber(b); }
  double k_squared(int a, int b) const { return kx(a) * kx(a) + ky(b) * ky(b); }

  /// Weight of column b when summing over the full (Hermitian) spectrum.
  double column_weight(int b) const { return (b == 0 || b == grid_.n / 2) ? 1.0 : 2.0; }

  Spectrum& operator+=(const Spectrum& other);
  Spectrum& operator*=(double factor);
  /// this += factor * other
  Spectrum& add_scaled(double factor, const Spectrum& other);

 private:
  GridSpec grid_{};
  std::vector<value_type> coeffs_;
};

Spectrum forward_transform(const ScalarField& f);
ScalarField inverse_transform(const Spectrum& spectrum);

/// Sum over the full spectrum of |F|^2 (Parseval partner of n^2 * sum |f|^2).
double spectral_energy(const Spectrum& spectrum);

/// Highest retained |mode| per axis under the 2/3 rule.
int dealias_cutoff(int n);

/// Thread count used by transforms planned from now on. Recorded in run metadata.
void set_transform_threads(int threads);
int transform_threads();

VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
ScalarField laplacian(const ScalarField& f);
/// Mean-removed inverse: returns g with laplacian(g) = f - mean(f) and mean(g) = 0.
ScalarField inverse_laplacian(const ScalarField& f);
/// Zeroes every mode with max(|jx|, |jy|) above the 2/3 cutoff.
ScalarField dealias(const ScalarField& f);

/// The same operators acting on spectra, for callers that stay in Fourier space.
namespace fourier {

Spectrum derivative_x(const Spectrum& f);
Spectrum derivative_y(const Spectrum& f);
Spectrum divergence(const Spectrum& fx, const Spectrum& fy);
Spectrum laplacian(const Spectrum& f);
Spectrum inverse_laplacian(const Spectrum& f);
void dealias_in_place(Spectrum& f);
/// Multiplies every mode by exp(-|k|^2 * dt): the exact heat semigroup.
void apply_heat_semigroup(Spectrum& f, double dt);
/// Homogeneous Sobolev seminorm squared, sum |k|^{2s} |F|^2 scaled to the continuous L^2 norm.
double homogeneous_sobolev_squared(const Spectrum& f, double s);

}  // namespace fourier

}  // namespace chemoreact
