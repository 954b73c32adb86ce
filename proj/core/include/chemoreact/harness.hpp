#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "chemoreact/config_io.hpp"
#include "chemoreact/diagnostics.hpp"
#include "chemoreact/error.hpp"
#include "chemoreact/theory.hpp"

namespace chemoreact {

/// Library version baked in at build time.
std::string code_version();

ExitCode exit_code_for(RunStatus status);

struct RunOutcome {
  TimeSeries series;
  std::filesystem::path directory;
  double wall_seconds = 0.0;
  int threads = 1;
  ExitCode exit_code = ExitCode::kOk;
};

/// Integrates `config` and writes series.csv, meta.json and any requested snapshots into
/// `directory`. Config errors are raised before the directory is touched.
RunOutcome run_to_directory(const RunConfig& config, const std::filesystem::path& directory, int threads = 1);

struct HalfMassTime {
  double value = 0.0;
  /// True when m0 never reached half its initial value and the time comes from an inverse-log fit.
  bool extrapolated = false;
};

/// First time m0 <= m0(0)/2, interpolated linearly in log t between records. Otherwise, if the
/// series decays, extrapolates 1/m0 = A + B log t fitted on `window` (default [t_end/10, t_end]).
std::optional<HalfMassTime> half_mass_time(const TimeSeries& series, std::optional<Window> window = {});

/// Physics knobs of a finished run as recorded in its meta.json.
struct RunContext {
  std::string label;
  double chi = 0.0;
  double epsilon = 0.0;
  double q = 2.0;
  FlowKind flow = FlowKind::kNone;
  double amplitude = 0.0;
  double t_end = 0.0;
  RunStatus status = RunStatus::kCompleted;
};

RunContext context_from(const RunConfig& config);
/// Reads the meta.json next to `series_csv`; throws ConfigError if it is absent or malformed.
RunContext load_run_context(const std::filesystem::path& series_csv);

struct SweepRow {
  std::string label;
  double epsilon = 0.0;
  double chi = 0.0;
  double amplitude = 0.0;
  std::string status;
  double final_t = 0.0;
  double final_m0 = 0.0;
  double half_mass_time = 0.0;
  bool half_mass_extrapolated = false;
  std::string fit_model;
  double fit_slope = 0.0;
  double fit_r_squared = 0.0;
  bool all_valid = true;
  bool completed = true;
};

inline constexpr const char* kSummaryHeader =
    "label,epsilon,chi,amplitude,status,final_t,final_m0,half_mass_time,half_mass_extrapolated,fit_model,fit_slope,"
    "fit_r_squared,all_valid,completed";

/// Rebuilds the summary from the run subdirectories of `sweep_dir`, sorted by directory name.
std::vector<SweepRow> summarize_sweep(const std::filesystem::path& sweep_dir);
std::string format_summary_csv(const std::vector<SweepRow>& rows);

struct SweepOutcome {
  std::vector<SweepRow> rows;
  ExitCode exit_code = ExitCode::kOk;
};

/// Runs every point of the sweep in its own subdirectory, at most `parallelism` at a time, then
/// writes summary.csv. Failed runs are recorded and do not stop the sweep.
SweepOutcome run_sweep(const SweepConfig& sweep, const std::filesystem::path& directory, int parallelism);

}  // namespace chemoreact
