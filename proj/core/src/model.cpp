#include "chemoreact/model.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

#include "chemoreact/error.hpp"

namespace chemoreact {
namespace {

bool is_small_integer_power(double q) { return q == std::floor(q) && q <= 3.0; }

double power(double value, double q) {
  if (q == 1.0) return value;
  if (q == 2.0) return value * value;
  if (q == 3.0) return value * value * value;
  if (q == std::floor(q)) return std::pow(value, q);
  return std::pow(std::max(value, 0.0), q);
}

void check_negativity(const ScalarField& rho, double tolerance) {
  const double lowest = rho.min();
  if (lowest < -tolerance) {
    throw InvalidStateError(fmt::format("density {:.6g} below negativity tolerance -{:.6g} (under-resolution or aggregation blow-up)", lowest, tolerance));
  }
}

ScalarField reaction_power(const ScalarField& rho, double q) {
  ScalarField out(rho.grid());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = power(rho[i], q);
  return out;
}

}  // namespace

void ModelParams::validate() const {
  if (!(chi >= 0.0) || !std::isfinite(chi)) throw ConfigError("model.chi must be finite and >= 0");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw ConfigError("model.epsilon must be finite and >= 0");
  if (!(q >= 1.0) || !std::isfinite(q)) throw ConfigError("model.q must be finite and >= 1");
}

std::string to_string(FlowKind kind) {
  switch (kind) {
    case FlowKind::kNone: return "none";
    case FlowKind::kCellular: return "cellular";
    case FlowKind::kCustom: return "custom";
  }
  return "none";
}

FlowKind parse_flow_kind(const std::string& text) {
  if (text == "none") return FlowKind::kNone;
  if (text == "cellular") return FlowKind::kCellular;
  if (text == "custom") return FlowKind::kCustom;
  throw ConfigError("unknown flow kind '" + text + "' (expected none, cellular or custom)");
}

void FlowSpec::validate(const GridSpec& grid) const {
  if (!std::isfinite(amplitude)) throw ConfigError("flow.amplitude must be finite");
  if (kind == FlowKind::kCellular && (wavenumber < 1 || wavenumber > dealias_cutoff(grid.n))) {
    throw ConfigError("flow.wavenumber must lie in [1, n/3]");
  }
  if (kind == FlowKind::kCustom && !stream_at) {
    if (!custom_stream) throw ConfigError("flow.kind = custom requires a stream function");
    if (!(custom_stream->grid() == grid)) throw ConfigError("custom stream function grid does not match run grid");
    if (!custom_stream->all_finite()) throw ConfigError("custom stream function has non-finite samples");
  }
}

bool FlowSpec::is_zero() const {
  switch (kind) {
    case FlowKind::kNone: return true;
    case FlowKind::kCellular: return amplitude == 0.0;
    case FlowKind::kCustom: return false;
  }
  return true;
}

ScalarField FlowSpec::stream_function(const GridSpec& grid, double t) const {
  switch (kind) {
    case FlowKind::kNone: return ScalarField(grid);
    case FlowKind::kCellular: {
      const double k = 2.0 * std::numbers::pi * wavenumber / grid.L;
      const double a = amplitude;
      return ScalarField::sample(grid, [k, a](double x, double y) { return a * std::sin(k * x) * std::sin(k * y); });
    }
    case FlowKind::kCustom: return stream_at ? stream_at(t) : *custom_stream;
  }
  return ScalarField(grid);
}

VectorField velocity_from_stream(const ScalarField& stream) {
  VectorField grad = gradient(stream);
  VectorField u{std::move(grad.y), std::move(grad.x)};
  u.x *= -1.0;
  return u;
}

VectorField flow_velocity(const FlowSpec& flow, const GridSpec& grid, double t) {
  if (flow.kind == FlowKind::kNone) return {ScalarField(grid), ScalarField(grid)};
  return velocity_from_stream(flow.stream_function(grid, t));
}

ScalarField chemo_term(const ScalarField& rho, double chi) {
  if (chi == 0.0) return ScalarField(rho.grid());
  const ScalarField rho_d = dealias(rho);
  const VectorField chem_grad = gradient(inverse_laplacian(rho));
  const VectorField flux{dealias(hadamard(rho_d, chem_grad.x)), dealias(hadamard(rho_d, chem_grad.y))};
  return chi * divergence(flux);
}

ScalarField reaction_term(const ScalarField& rho, double epsilon, double q, double tolerance) {
  check_negativity(rho, tolerance);
  if (epsilon == 0.0) return ScalarField(rho.grid());
  ScalarField r = reaction_power(rho, q);
  if (is_small_integer_power(q)) r = dealias(r);
  return -epsilon * std::move(r);
}

ScalarField advection_term(const ScalarField& rho, const VectorField& velocity) {
  const ScalarField rho_d = dealias(rho);
  const VectorField flux{dealias(hadamard(velocity.x, rho_d)), dealias(hadamard(velocity.y, rho_d))};
  return -1.0 * divergence(flux);
}

Tendency assemble_rhs(const ScalarField& rho, const ModelParams& params, const FlowSpec& flow,
                      bool include_diffusion, double t, double tolerance) {
  RhsEvaluator evaluator(rho.grid(), params, flow, tolerance);
  const Spectrum rho_hat = forward_transform(rho);
  Spectrum total = evaluator.nonlinear(rho_hat, rho, t);
  if (include_diffusion) total += fourier::laplacian(rho_hat);
  return {inverse_transform(total), include_diffusion};
}

RhsEvaluator::RhsEvaluator(GridSpec grid, ModelParams params, FlowSpec flow, double negativity_tolerance)
    : grid_(grid), params_(params), flow_(std::move(flow)), tolerance_(negativity_tolerance) {
  if (!flow_.is_zero() && !flow_.time_dependent()) steady_velocity_ = flow_velocity(flow_, grid_);
}

const VectorField* RhsEvaluator::velocity_at(double t, VectorField& scratch) const {
  if (flow_.is_zero()) return nullptr;
  if (steady_velocity_) return &*steady_velocity_;
  scratch = flow_velocity(flow_, grid_, t);
  return &scratch;
}

StageInfo RhsEvaluator::stage_info(const Spectrum& rho_hat, const ScalarField& rho, double t) const {
  StageInfo info;
  info.max_density = rho.max();
  VectorField scratch;
  const VectorField* u = velocity_at(t, scratch);
  std::optional<VectorField> chem_grad;
  if (params_.chi != 0.0) {
    const Spectrum c_hat = fourier::inverse_laplacian(rho_hat);
    chem_grad = VectorField{inverse_transform(fourier::derivative_x(c_hat)),
                            inverse_transform(fourier::derivative_y(c_hat))};
  }
  for (std::size_t i = 0; i < rho.size(); ++i) {
    double speed = 0.0;
    if (u) speed += std::hypot(u->x[i], u->y[i]);
    if (chem_grad) speed += params_.chi * std::hypot(chem_grad->x[i], chem_grad->y[i]);
    info.max_transport_speed = std::max(info.max_transport_speed, speed);
  }
  return info;
}

Spectrum RhsEvaluator::nonlinear(const Spectrum& rho_hat, const ScalarField& rho, double t, StageInfo* info) const {
  check_negativity(rho, tolerance_);
  Spectrum out(grid_);
  double max_speed = 0.0;

  VectorField scratch;
  const VectorField* u = velocity_at(t, scratch);
  const bool chemotaxis = params_.chi != 0.0;
  if (u || chemotaxis) {
    Spectrum rho_d_hat = rho_hat;
    fourier::dealias_in_place(rho_d_hat);
    const ScalarField rho_d = inverse_transform(rho_d_hat);

    // Total transport velocity w = u - chi grad(lap^{-1} rho); tendency is -div(rho_d w).
    ScalarField wx(grid_), wy(grid_);
    ScalarField speed(grid_);
    if (u) {
      wx = u->x;
      wy = u->y;
      for (std::size_t i = 0; i < speed.size(); ++i) speed[i] = std::hypot(u->x[i], u->y[i]);
    }
    if (chemotaxis) {
      const Spectrum c_hat = fourier::inverse_laplacian(rho_hat);
      const ScalarField cx = inverse_transform(fourier::derivative_x(c_hat));
      const ScalarField cy = inverse_transform(fourier::derivative_y(c_hat));
      for (std::size_t i = 0; i < wx.size(); ++i) {
        wx[i] -= params_.chi * cx[i];
        wy[i] -= params_.chi * cy[i];
        speed[i] += params_.chi * std::hypot(cx[i], cy[i]);
      }
    }
    for (std::size_t i = 0; i < wx.size(); ++i) {
      wx[i] *= rho_d[i];
      wy[i] *= rho_d[i];
      max_speed = std::max(max_speed, speed[i]);
    }
    Spectrum fx = forward_transform(wx);
    Spectrum fy = forward_transform(wy);
    fourier::dealias_in_place(fx);
    fourier::dealias_in_place(fy);
    out.add_scaled(-1.0, fourier::divergence(fx, fy));
  }

  if (params_.epsilon != 0.0) {
    Spectrum r = forward_transform(reaction_power(rho, params_.q));
    if (is_small_integer_power(params_.q)) fourier::dealias_in_place(r);
    out.add_scaled(-params_.epsilon, r);
  }

  if (info) {
    info->max_transport_speed = max_speed;
    info->max_density = rho.max();
  }
  return out;
}

}  // namespace chemoreact
