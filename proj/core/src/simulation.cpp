#include "chemoreact/simulation.hpp"

#include <cmath>

#include "chemoreact/error.hpp"

namespace chemoreact {
namespace {

/// h^2 sum rho^q: the instantaneous reaction loss divided by eps.
double reaction_density(const ScalarField& rho, double q) {
  double sum = 0.0;
  if (q == 2.0) {
    for (double v : rho.values()) sum += v * v;
  } else {
    for (double v : rho.values()) sum += std::pow(std::max(v, 0.0), q);
  }
  return sum * rho.grid().cell_area();
}

RunStatus status_for(const std::exception& e) {
  if (dynamic_cast<const BlowUpError*>(&e)) return RunStatus::kBlowUp;
  if (dynamic_cast<const InvalidStateError*>(&e)) return RunStatus::kInvalidState;
  if (dynamic_cast<const StepCollapseError*>(&e)) return RunStatus::kStepCollapse;
  return RunStatus::kFailed;
}

}  // namespace

TimeSeries integrate(const RunConfig& config, const RecordObserver& observer) {
  config.validate();
  TimeSeries series;
  series.metadata.label = config.label;

  RunState state = RunState::initial(make_initial_condition(config.ic, config.grid));
  const double m0_initial = mass(state.rho);
  const double epsilon = config.model.epsilon;
  const double s = config.output.sobolev_order;

  auto emit = [&](double reaction_integral) {
    const double residual = std::abs(mass(state.rho) - m0_initial + epsilon * reaction_integral);
    DiagnosticsRecord record = make_record(state.rho, state.t, s, residual);
    if (!record.valid && series.metadata.all_valid) {
      series.metadata.all_valid = false;
      series.metadata.first_invalid_t = record.t;
    }
    series.records.push_back(record);
    if (observer) observer(state, record);
  };

  double reaction_integral = 0.0;
  emit(reaction_integral);

  try {
    const Integrator integrator(config.grid, config.model, config.flow, config.stepper, state.reference_max);
    double loss_rate = reaction_density(state.rho, config.model.q);
    for (double target : output_times(config.output, config.stepper.t_end)) {
      while (state.t < target) {
        const double remaining = target - state.t;
        const double dt = integrator.advance(state, remaining);
        if (dt >= remaining) state.t = target;
        const double next_rate = reaction_density(state.rho, config.model.q);
        reaction_integral += 0.5 * dt * (loss_rate + next_rate);
        loss_rate = next_rate;
      }
      emit(reaction_integral);
    }
  } catch (const Error& e) {
    series.metadata.status = status_for(e);
    series.metadata.failure_reason = e.what();
  }
  series.metadata.steps = state.step_count;
  series.metadata.min_value_seen = state.min_value_seen;
  return series;
}

}  // namespace chemoreact
