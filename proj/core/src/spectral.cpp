#include "chemoreact/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "chemoreact/error.hpp"

namespace chemoreact {
namespace {

// FFTW_ESTIMATE keeps plan selection deterministic; FFTW_UNALIGNED lets the
// new-array execute interface run on std::vector storage from any thread.
constexpr unsigned kPlanFlags = FFTW_ESTIMATE | FFTW_UNALIGNED;

struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  ~PlanPair() {
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
};

class PlanRegistry {
 public:
  static PlanRegistry& instance() {
    static PlanRegistry registry;
    return registry;
  }

  const PlanPair& plans(int n) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(n, threads_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return *it->second;

    fftw_plan_with_nthreads(threads_);
    const std::size_t real_size = static_cast<std::size_t>(n) * n;
    const std::size_t complex_size = static_cast<std::size_t>(n) * (n / 2 + 1);
    std::vector<double> real(real_size);
    std::vector<std::complex<double>> cplx(complex_size);
    auto pair = std::make_unique<PlanPair>();
    pair->r2c = fftw_plan_dft_r2c_2d(n, n, real.data(), reinterpret_cast<fftw_complex*>(cplx.data()), kPlanFlags);
    pair->c2r = fftw_plan_dft_c2r_2d(n, n, reinterpret_cast<fftw_complex*>(cplx.data()), real.data(), kPlanFlags);
    if (!pair->r2c || !pair->c2r) throw Error("FFTW planning failed");
    return *plans_.emplace(key, std::move(pair)).first->second;
  }

  void set_threads(int threads) {
    std::lock_guard lock(mutex_);
    threads_ = std::max(1, threads);
  }

  int threads() {
    std::lock_guard lock(mutex_);
    return threads_;
  }

 private:
  PlanRegistry() { fftw_init_threads(); }

  std::mutex mutex_;
  int threads_ = 1;
  std::map<std::pair<int, int>, std::unique_ptr<PlanPair>> plans_;
};

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw Error("operands live on different grids");
}

}  // namespace

Spectrum::Spectrum(GridSpec grid)
    : grid_(grid), coeffs_(static_cast<std::size_t>(grid.n) * (grid.n / 2 + 1)) {}

Spectrum& Spectrum::operator+=(const Spectrum& other) {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

Spectrum& Spectrum::operator*=(double factor) {
  for (auto& c : coeffs_) c *= factor;
  return *this;
}

Spectrum& Spectrum::add_scaled(double factor, const Spectrum& other) {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += factor * other.coeffs_[i];
  return *this;
}

void set_transform_threads(int threads) { PlanRegistry::instance().set_threads(threads); }
int transform_threads() { return PlanRegistry::instance().threads(); }

Spectrum forward_transform(const ScalarField& f) {
  const GridSpec& grid = f.grid();
  const PlanPair& plans = PlanRegistry::instance().plans(grid.n);
  Spectrum out(grid);
  // FFTW's r2c does not modify its input, the const_cast only satisfies the C signature.
  fftw_execute_dft_r2c(plans.r2c, const_cast<double*>(f.values().data()),
                       reinterpret_cast<fftw_complex*>(out.coefficients().data()));
  return out;
}

ScalarField inverse_transform(const Spectrum& spectrum) {
  const GridSpec& grid = spectrum.grid();
  const PlanPair& plans = PlanRegistry::instance().plans(grid.n);
  // Multi-dimensional c2r destroys its input.
  std::vector<std::complex<double>> scratch(spectrum.coefficients().begin(), spectrum.coefficients().end());
  ScalarField out(grid);
  fftw_execute_dft_c2r(plans.c2r, reinterpret_cast<fftw_complex*>(scratch.data()), out.values().data());
  out *= 1.0 / (static_cast<double>(grid.n) * grid.n);
  return out;
}

double spectral_energy(const Spectrum& spectrum) {
  double sum = 0.0;
  for (int a = 0; a < spectrum.rows(); ++a) {
    for (int b = 0; b < spectrum.cols(); ++b) {
      sum += spectrum.column_weight(b) * std::norm(spectrum(a, b));
    }
  }
  return sum;
}

int dealias_cutoff(int n) { return n / 3; }

namespace fourier {

Spectrum derivative_x(const Spectrum& f) {
  Spectrum out(f.grid());
  const int nyquist = f.rows() / 2;
  for (int a = 0; a < f.rows(); ++a) {
    const std::complex<double> factor(0.0, a == nyquist ? 0.0 : f.kx(a));
    for (int b = 0; b < f.cols(); ++b) out(a, b) = factor * f(a, b);
  }
  return out;
}

Spectrum derivative_y(const Spectrum& f) {
  Spectrum out(f.grid());
  const int nyquist = f.rows() / 2;
  for (int a = 0; a < f.rows(); ++a) {
    for (int b = 0; b < f.cols(); ++b) {
      const std::complex<double> factor(0.0, b == nyquist ? 0.0 : f.ky(b));
      out(a, b) = factor * f(a, b);
    }
  }
  return out;
}

Spectrum divergence(const Spectrum& fx, const Spectrum& fy) {
  require_same_grid(fx.grid(), fy.grid());
  Spectrum out = derivative_x(fx);
  out += derivative_y(fy);
  return out;
}

Spectrum laplacian(const Spectrum& f) {
  Spectrum out(f.grid());
  for (int a = 0; a < f.rows(); ++a) {
    for (int b = 0; b < f.cols(); ++b) out(a, b) = -f.k_squared(a, b) * f(a, b);
  }
  return out;
}

Spectrum inverse_laplacian(const Spectrum& f) {
  Spectrum out(f.grid());
  for (int a = 0; a < f.rows(); ++a) {
    for (int b = 0; b < f.cols(); ++b) {
      if (a == 0 && b == 0) continue;
      out(a, b) = -f(a, b) / f.k_squared(a, b);
    }
  }
  return out;
}

void dealias_in_place(Spectrum& f) {
  const GridSpec& grid = f.grid();
  const int cutoff = dealias_cutoff(grid.n);
  for (int a = 0; a < f.rows(); ++a) {
    const bool row_cut = std::abs(grid.mode(a)) > cutoff;
    for (int b = 0; b < f.cols(); ++b) {
      if (row_cut || b > cutoff) f(a, b) = 0.0;
    }
  }
}

void apply_heat_semigroup(Spectrum& f, double dt) {
  // exp(-(kx^2 + ky^2) dt) factors into a row part and a column part.
  std::vector<double> column_factor(f.cols());
  for (int b = 0; b < f.cols(); ++b) column_factor[b] = std::exp(-f.ky(b) * f.ky(b) * dt);
  for (int a = 0; a < f.rows(); ++a) {
    const double row_factor = std::exp(-f.kx(a) * f.kx(a) * dt);
    for (int b = 0; b < f.cols(); ++b) f(a, b) *= row_factor * column_factor[b];
  }
}

double homogeneous_sobolev_squared(const Spectrum& f, double s) {
  double sum = 0.0;
  for (int a = 0; a < f.rows(); ++a) {
    for (int b = 0; b < f.cols(); ++b) {
      const double k2 = f.k_squared(a, b);
      if (k2 == 0.0) continue;
      sum += f.column_weight(b) * std::pow(k2, s) * std::norm(f(a, b));
    }
  }
  const double n2 = static_cast<double>(f.grid().n) * f.grid().n;
  // Parseval: h^2 sum |g|^2 = (L^2 / n^4) sum |G|^2.
  return sum * f.grid().L * f.grid().L / (n2 * n2);
}

}  // namespace fourier

VectorField gradient(const ScalarField& f) {
  const Spectrum spectrum = forward_transform(f);
  return {inverse_transform(fourier::derivative_x(spectrum)), inverse_transform(fourier::derivative_y(spectrum))};
}

ScalarField divergence(const VectorField& v) {
  require_same_grid(v.x.grid(), v.y.grid());
  return inverse_transform(fourier::divergence(forward_transform(v.x), forward_transform(v.y)));
}

ScalarField laplacian(const ScalarField& f) {
  return inverse_transform(fourier::laplacian(forward_transform(f)));
}

ScalarField inverse_laplacian(const ScalarField& f) {
  return inverse_transform(fourier::inverse_laplacian(forward_transform(f)));
}

ScalarField dealias(const ScalarField& f) {
  Spectrum spectrum = forward_transform(f);
  fourier::dealias_in_place(spectrum);
  return inverse_transform(spectrum);
}

}  // namespace chemoreact
