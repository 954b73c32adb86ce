#include "chemoreact/integrator.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "chemoreact/error.hpp"

namespace chemoreact {

std::string to_string(Scheme scheme) { return scheme == Scheme::kIfRk4 ? "if_rk4" : "if_heun"; }

Scheme parse_scheme(const std::string& text) {
  if (text == "if_heun") return Scheme::kIfHeun;
  if (text == "if_rk4") return Scheme::kIfRk4;
  throw ConfigError("unknown scheme '" + text + "' (expected if_heun or if_rk4)");
}

void StepperConfig::validate() const {
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("stepper.t_end must be finite and >= 0");
  if (!(cfl > 0.0 && cfl <= 1.0)) throw ConfigError("stepper.cfl must lie in (0, 1]");
  if (!(dt_max > 0.0)) throw ConfigError("stepper.dt_max must be positive");
  if (!(tol_pos > 0.0)) throw ConfigError("stepper.tol_pos must be positive");
}

RunState RunState::initial(ScalarField rho0) {
  RunState state;
  state.reference_max = rho0.max();
  state.min_value_seen = rho0.min();
  state.rho = std::move(rho0);
  return state;
}

Integrator::Integrator(GridSpec grid, ModelParams params, FlowSpec flow, StepperConfig config, double reference_max)
    : grid_(grid),
      config_(config),
      tolerance_(config.tol_pos * std::max(reference_max, 0.0)),
      rhs_(grid, params, std::move(flow), config.tol_pos * std::max(reference_max, 0.0)) {}

double Integrator::dt_from(const StageInfo& info) const {
  const ModelParams& p = rhs_.params();
  double dt = config_.dt_max;
  if (info.max_transport_speed > 0.0) dt = std::min(dt, config_.cfl * grid_.spacing() / info.max_transport_speed);
  if (p.epsilon > 0.0 && info.max_density > 0.0) {
    const double rate = p.epsilon * p.q * std::pow(info.max_density, p.q - 1.0);
    if (rate > 0.0) dt = std::min(dt, config_.cfl / rate);
  }
  if (dt < 1e-12 * config_.t_end) {
    throw StepCollapseError(fmt::format("time step {:.6g} collapsed below 1e-12 * t_end", dt));
  }
  return dt;
}

double Integrator::compute_dt(const RunState& state) const {
  const Spectrum rho_hat = forward_transform(state.rho);
  return dt_from(rhs_.stage_info(rho_hat, state.rho, state.t));
}

void Integrator::check_state(const ScalarField& rho, double t) const {
  if (!rho.all_finite()) {
    throw BlowUpError(fmt::format("non-finite density at t = {:.6g} (blow-up indicator)", t));
  }
  const double lowest = rho.min();
  if (lowest < -tolerance_) {
    throw InvalidStateError(fmt::format(
        "min density {:.6g} below -tol_pos * max(rho_0) = {:.6g} at t = {:.6g} (likely under-resolution or aggregation blow-up)",
        lowest, -tolerance_, t));
  }
}

double Integrator::advance(RunState& state, double dt_limit) const {
  const double t = state.t;
  const Spectrum rho_hat = forward_transform(state.rho);
  StageInfo info;
  Spectrum k1 = rhs_.nonlinear(rho_hat, state.rho, t, &info);
  const double allowed = dt_from(info);
  // Spread the distance to dt_limit over equal steps so no sliver step is left before it.
  const double dt = dt_limit <= allowed || !std::isfinite(dt_limit)
                        ? std::min(allowed, dt_limit)
                        : dt_limit / std::ceil(dt_limit / allowed - 1e-9);

  Spectrum next;
  if (config_.scheme == Scheme::kIfHeun) {
    // predictor a = E (rho + dt k1); corrector E (rho + dt/2 k1) + dt/2 N(a)
    Spectrum a_hat = rho_hat;
    a_hat.add_scaled(dt, k1);
    fourier::apply_heat_semigroup(a_hat, dt);
    const Spectrum k2 = rhs_.nonlinear(a_hat, inverse_transform(a_hat), t + dt);
    next = rho_hat;
    next.add_scaled(0.5 * dt, k1);
    fourier::apply_heat_semigroup(next, dt);
    next.add_scaled(0.5 * dt, k2);
  } else {
    const double half = 0.5 * dt;
    Spectrum e_half_rho = rho_hat;
    fourier::apply_heat_semigroup(e_half_rho, half);
    Spectrum e_rho = e_half_rho;
    fourier::apply_heat_semigroup(e_rho, half);

    Spectrum a_hat = rho_hat;
    a_hat.add_scaled(half, k1);
    fourier::apply_heat_semigroup(a_hat, half);
    const Spectrum k2 = rhs_.nonlinear(a_hat, inverse_transform(a_hat), t + half);

    Spectrum b_hat = e_half_rho;
    b_hat.add_scaled(half, k2);
    const Spectrum k3 = rhs_.nonlinear(b_hat, inverse_transform(b_hat), t + half);

    Spectrum e_half_k3 = k3;
    fourier::apply_heat_semigroup(e_half_k3, half);
    Spectrum c_hat = e_rho;
    c_hat.add_scaled(dt, e_half_k3);
    const Spectrum k4 = rhs_.nonlinear(c_hat, inverse_transform(c_hat), t + dt);

    fourier::apply_heat_semigroup(k1, dt);
    Spectrum middle = k2;
    middle += k3;
    fourier::apply_heat_semigroup(middle, half);
    next = e_rho;
    next.add_scaled(dt / 6.0, k1);
    next.add_scaled(dt / 3.0, middle);
    next.add_scaled(dt / 6.0, k4);
  }

  ScalarField rho = inverse_transform(next);
  check_state(rho, t + dt);
  state.min_value_seen = std::min(state.min_value_seen, rho.min());
  state.rho = std::move(rho);
  state.t = t + dt;
  state.dt_last = dt;
  ++state.step_count;
  return dt;
}

double compute_dt(const RunState& state, const ModelParams& params, const FlowSpec& flow, const StepperConfig& config) {
  return Integrator(state.rho.grid(), params, flow, config, state.reference_max).compute_dt(state);
}

RunState step(RunState state, const ModelParams& params, const FlowSpec& flow, const StepperConfig& config) {
  Integrator(state.rho.grid(), params, flow, config, state.reference_max).advance(state);
  return state;
}

}  // namespace chemoreact
