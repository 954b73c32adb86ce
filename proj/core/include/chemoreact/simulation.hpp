#pragma once

#include <functional>

#include "chemoreact/diagnostics.hpp"
#include "chemoreact/integrator.hpp"
#include "chemoreact/run_config.hpp"

namespace chemoreact {

/// Called once per emitted record with the state it was computed from.
using RecordObserver = std::function<void(const RunState&, const DiagnosticsRecord&)>;

/// Steps from t = 0 to t_end, emitting one record at t = 0 and one per output time.
/// Step errors do not propagate: the series is returned partial with the failure recorded.
/// Throws ConfigError for an invalid config before any stepping.
TimeSeries integrate(const RunConfig& config, const RecordObserver& observer = {});

}  // namespace chemoreact
