#pragma once

#include <limits>
#include <string>

#include "chemoreact/grid.hpp"
#include "chemoreact/model.hpp"

namespace chemoreact {

enum class Scheme { kIfHeun, kIfRk4 };

std::string to_string(Scheme scheme);
Scheme parse_scheme(const std::string& text);

struct StepperConfig {
  double t_end = 1.0;
  /// Courant safety factor in (0, 1].
  double cfl = 0.5;
  double dt_max = 0.01;
  /// Relative negativity tolerance: min(rho) must stay >= -tol_pos * max(rho_0).
  double tol_pos = 1e-6;
  Scheme scheme = Scheme::kIfHeun;

  void validate() const;
};

struct RunState {
  double t = 0.0;
  ScalarField rho;
  double dt_last = 0.0;
  long step_count = 0;
  double min_value_seen = 0.0;
  /// max(rho_0), the scale of the negativity tolerance.
  double reference_max = 0.0;

  static RunState initial(ScalarField rho0);
};

/// Integrating-factor stepper: diffusion exact in Fourier space, the rest explicit.
class Integrator {
 public:
  Integrator(GridSpec grid, ModelParams params, FlowSpec flow, StepperConfig config, double reference_max);

  /// min(dt_max, cfl h / V_max, cfl / (eps q max(rho)^(q-1))); throws StepCollapseError below 1e-12 t_end.
  double compute_dt(const RunState& state) const;

  /// One step toward the horizon dt_limit: dt_limit itself if compute_dt allows it, otherwise
  /// dt_limit / ceil(dt_limit / compute_dt) so the horizon is reached in equal steps.
  /// Returns the step actually taken.
  double advance(RunState& state, double dt_limit = std::numeric_limits<double>::infinity()) const;

  const StepperConfig& config() const { return config_; }

 private:
  double dt_from(const StageInfo& info) const;
  void check_state(const ScalarField& rho, double t) const;

  GridSpec grid_;
  StepperConfig config_;
  double tolerance_;
  RhsEvaluator rhs_;
};

double compute_dt(const RunState& state, const ModelParams& params, const FlowSpec& flow, const StepperConfig& config);
RunState step(RunState state, const ModelParams& params, const FlowSpec& flow, const StepperConfig& config);

}  // namespace chemoreact
