#include "chemoreact/diagnostics.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "chemoreact/error.hpp"
#include "chemoreact/spectral.hpp"

namespace chemoreact {
namespace {

constexpr double kMinConcentration = 1e-2;

double wrap(double d, double L) {
  d = std::fmod(d, L);
  if (d < -0.5 * L) d += L;
  if (d >= 0.5 * L) d -= L;
  return d;
}

}  // namespace

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::kCompleted: return "completed";
    case RunStatus::kBlowUp: return "blow_up";
    case RunStatus::kInvalidState: return "invalid_state";
    case RunStatus::kStepCollapse: return "step_collapse";
    case RunStatus::kFailed: return "failed";
  }
  return "failed";
}

double mass(const ScalarField& rho) { return rho.integral(); }

Centroid torus_centroid(const ScalarField& rho) {
  const GridSpec& g = rho.grid();
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<std::complex<double>> phase(g.n);
  for (int i = 0; i < g.n; ++i) phase[i] = std::polar(1.0, two_pi * i / g.n);

  std::complex<double> sx = 0.0, sy = 0.0;
  double total = 0.0;
  for (int ix = 0; ix < g.n; ++ix) {
    for (int iy = 0; iy < g.n; ++iy) {
      const double w = rho(ix, iy);
      sx += w * phase[ix];
      sy += w * phase[iy];
      total += w;
    }
  }
  if (!(total > 0.0)) throw DelocalizedStateError("centroid undefined for non-positive total mass");
  const double rx = std::abs(sx) / total;
  const double ry = std::abs(sy) / total;
  Centroid c;
  c.concentration = std::min(rx, ry);
  if (c.concentration < kMinConcentration) {
    throw DelocalizedStateError("density is near-uniform; torus centroid is ill-conditioned");
  }
  auto position = [&](std::complex<double> s) {
    double angle = std::arg(s);
    if (angle < 0.0) angle += two_pi;
    return angle / two_pi * g.L;
  };
  c.x = position(sx);
  c.y = position(sy);
  return c;
}

double second_moment(const ScalarField& rho) {
  const GridSpec& g = rho.grid();
  const Centroid c = torus_centroid(rho);
  std::vector<double> dx2(g.n), dy2(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double dx = wrap(g.coordinate(i) - c.x, g.L);
    const double dy = wrap(g.coordinate(i) - c.y, g.L);
    dx2[i] = dx * dx;
    dy2[i] = dy * dy;
  }
  double sum = 0.0;
  for (int ix = 0; ix < g.n; ++ix) {
    for (int iy = 0; iy < g.n; ++iy) sum += rho(ix, iy) * (dx2[ix] + dy2[iy]);
  }
  return sum * g.cell_area();
}

Norms norms(const ScalarField& rho, double s) {
  Norms out;
  double sq = 0.0;
  for (double v : rho.values()) sq += v * v;
  out.l2sq = sq * rho.grid().cell_area();
  out.linf = rho.max();
  out.hs = std::sqrt(fourier::homogeneous_sobolev_squared(forward_transform(rho), s));
  return out;
}

double interaction_area(double m0, double l2sq) {
  if (!(l2sq > std::numeric_limits<double>::min())) return std::numeric_limits<double>::infinity();
  return m0 * m0 / l2sq;
}

double interaction_area(const DiagnosticsRecord& record) { return interaction_area(record.m0, record.l2sq); }

std::vector<double> balance_residual(const TimeSeries& series, double epsilon) {
  std::vector<double> out;
  out.reserve(series.records.size());
  if (series.records.empty()) return out;
  const double m0_initial = series.records.front().m0;
  double integral = 0.0;
  for (std::size_t k = 0; k < series.records.size(); ++k) {
    if (k > 0) {
      const auto& a = series.records[k - 1];
      const auto& b = series.records[k];
      integral += 0.5 * (b.t - a.t) * (a.l2sq + b.l2sq);
    }
    out.push_back(std::abs(series.records[k].m0 - m0_initial + epsilon * integral));
  }
  return out;
}

double boundary_mass_fraction(const ScalarField& rho) {
  const GridSpec& g = rho.grid();
  double edge = 0.0, total = 0.0;
  for (int ix = 0; ix < g.n; ++ix) {
    for (int iy = 0; iy < g.n; ++iy) {
      const double w = std::abs(rho(ix, iy));
      total += w;
      if (ix == 0 || iy == 0 || ix == g.n - 1 || iy == g.n - 1) edge += w;
    }
  }
  return total > 0.0 ? edge / total : 0.0;
}

double weighted_moment_norm(const ScalarField& rho, int order) {
  const GridSpec& g = rho.grid();
  const Centroid c = torus_centroid(rho);
  const VectorField grad = gradient(rho);
  double sum = 0.0;
  for (int ix = 0; ix < g.n; ++ix) {
    const double dx = wrap(g.coordinate(ix) - c.x, g.L);
    for (int iy = 0; iy < g.n; ++iy) {
      const double dy = wrap(g.coordinate(iy) - c.y, g.L);
      const double weight = 1.0 + std::pow(std::hypot(dx, dy), order);
      sum += (std::abs(rho(ix, iy)) + std::hypot(grad.x(ix, iy), grad.y(ix, iy))) * weight;
    }
  }
  return sum * g.cell_area();
}

DiagnosticsRecord make_record(const ScalarField& rho, double t, double sobolev_order, double residual) {
  DiagnosticsRecord r;
  r.t = t;
  r.m0 = mass(rho);
  const Norms nm = norms(rho, sobolev_order);
  r.l2sq = nm.l2sq;
  r.linf = nm.linf;
  r.hs = nm.hs;
  r.min_val = rho.min();
  r.area = interaction_area(r.m0, r.l2sq);
  r.balance_residual = residual;
  r.valid = boundary_mass_fraction(rho) < kBoundaryMassTolerance;
  try {
    r.m2 = second_moment(rho);
  } catch (const DelocalizedStateError&) {
    r.m2 = std::numeric_limits<double>::quiet_NaN();
    r.valid = false;
  }
  return r;
}

}  // namespace chemoreact
