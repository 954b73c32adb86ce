#include "chemoreact/harness.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <mutex>
#include <thread>

#include "chemoreact/series_io.hpp"
#include "chemoreact/simulation.hpp"
#include "chemoreact/spectral.hpp"

#ifndef CHEMOREACT_VERSION
#define CHEMOREACT_VERSION "unknown"
#endif

namespace chemoreact {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

/// JSON has no NaN or infinity; non-finite numbers are written as null.
ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json config_json(const RunConfig& c) {
  ordered_json j;
  j["label"] = c.label;
  j["grid"] = {{"n", c.grid.n}, {"L", c.grid.L}};
  j["model"] = {{"chi", c.model.chi}, {"epsilon", c.model.epsilon}, {"q", c.model.q}};
  j["flow"] = {{"kind", to_string(c.flow.kind)},
               {"amplitude", c.flow.amplitude},
               {"wavenumber", c.flow.wavenumber},
               {"file", c.flow.file}};
  ordered_json centers = ordered_json::array();
  for (const auto& p : c.ic.centers) centers.push_back({p[0], p[1]});
  j["ic"] = {{"kind", to_string(c.ic.kind)}, {"mass", c.ic.mass},  {"width", c.ic.width}, {"centers", centers},
             {"seed", c.ic.seed},            {"edge", c.ic.edge},  {"file", c.ic.file}};
  j["stepper"] = {{"t_end", c.stepper.t_end},
                  {"cfl", c.stepper.cfl},
                  {"dt_max", c.stepper.dt_max},
                  {"tol_pos", c.stepper.tol_pos},
                  {"scheme", to_string(c.stepper.scheme)}};
  j["output"] = {{"spacing", to_string(c.output.spacing)},   {"interval", c.output.interval},
                 {"first", c.output.first},                  {"per_decade", c.output.per_decade},
                 {"snapshots", to_string(c.output.snapshots)}, {"sobolev_order", c.output.sobolev_order}};
  return j;
}

RunStatus parse_status(const std::string& text) {
  for (RunStatus s : {RunStatus::kCompleted, RunStatus::kBlowUp, RunStatus::kInvalidState, RunStatus::kStepCollapse,
                      RunStatus::kFailed}) {
    if (to_string(s) == text) return s;
  }
  throw ConfigError("unknown run status '" + text + "'");
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

nlohmann::json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

double final_time(const TimeSeries& s) { return s.records.empty() ? 0.0 : s.records.back().t; }

SweepRow summarize_run(const fs::path& dir) {
  const nlohmann::json meta = read_json(dir / "meta.json");
  const TimeSeries series = read_series_csv(dir / "series.csv");
  const auto& config = meta.at("config");
  SweepRow row;
  row.label = meta.at("label").get<std::string>();
  row.epsilon = config.at("model").at("epsilon").get<double>();
  row.chi = config.at("model").at("chi").get<double>();
  row.amplitude = config.at("flow").at("amplitude").get<double>();
  row.status = meta.at("status").get<std::string>();
  row.completed = row.status == to_string(RunStatus::kCompleted);
  row.all_valid = series.metadata.all_valid;
  row.final_t = final_time(series);
  row.final_m0 = series.records.empty() ? std::nan("") : series.records.back().m0;
  row.half_mass_time = std::nan("");
  if (const auto half = half_mass_time(series)) {
    row.half_mass_time = half->value;
    row.half_mass_extrapolated = half->extrapolated;
  }
  const FitModel model = row.chi > 0.0 ? FitModel::kPowerLaw : FitModel::kInverseLog;
  row.fit_model = to_string(model);
  row.fit_slope = row.fit_r_squared = std::nan("");
  const double t_end = config.at("stepper").at("t_end").get<double>();
  try {
    const Window w{t_end / 10.0, t_end};
    const FitResult fit = model == FitModel::kPowerLaw ? fit_power_law(series, w) : fit_inverse_log(series, w);
    row.fit_slope = fit.slope;
    row.fit_r_squared = fit.r_squared;
  } catch (const Error&) {
    // Too few records in the default window: the columns stay NaN.
  }
  return row;
}

}  // namespace

std::string code_version() { return CHEMOREACT_VERSION; }

ExitCode exit_code_for(RunStatus status) {
  switch (status) {
    case RunStatus::kCompleted:
      return ExitCode::kOk;
    case RunStatus::kBlowUp:
      return ExitCode::kBlowUp;
    case RunStatus::kInvalidState:
      return ExitCode::kInvalidState;
    case RunStatus::kStepCollapse:
      return ExitCode::kStepCollapse;
    case RunStatus::kFailed:
      break;
  }
  return ExitCode::kFailure;
}

RunOutcome run_to_directory(const RunConfig& config, const fs::path& directory, int threads) {
  config.validate();
  fs::create_directories(directory);
  set_transform_threads(threads);

  RunOutcome outcome;
  outcome.directory = directory;
  outcome.threads = threads;

  std::vector<std::pair<double, std::string>> snapshots;
  const std::size_t expected = output_times(config.output, config.stepper.t_end).size() + 1;
  RecordObserver observer;
  if (config.output.snapshots == SnapshotMode::kAll) {
    observer = [&](const RunState& state, const DiagnosticsRecord& record) {
      const std::string name = fmt::format("snapshot_{:06d}.bin", snapshots.size());
      write_snapshot(directory / name, state.rho);
      snapshots.emplace_back(record.t, name);
    };
  } else if (config.output.snapshots == SnapshotMode::kFinal) {
    std::size_t seen = 0;
    observer = [&, seen](const RunState& state, const DiagnosticsRecord& record) mutable {
      if (++seen < expected) return;
      write_snapshot(directory / "snapshot_final.bin", state.rho);
      snapshots.emplace_back(record.t, "snapshot_final.bin");
    };
  }

  const auto start = std::chrono::steady_clock::now();
  outcome.series = integrate(config, observer);
  outcome.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  outcome.exit_code = exit_code_for(outcome.series.metadata.status);

  write_series_csv(directory / "series.csv", outcome.series);

  const SeriesMetadata& m = outcome.series.metadata;
  ordered_json meta;
  meta["label"] = config.label;
  meta["code_version"] = code_version();
  meta["threads"] = threads;
  meta["wall_seconds"] = outcome.wall_seconds;
  meta["status"] = to_string(m.status);
  meta["failure_reason"] = m.failure_reason;
  meta["steps"] = m.steps;
  meta["min_value_seen"] = number(m.min_value_seen);
  meta["records"] = outcome.series.records.size();
  meta["all_valid"] = m.all_valid;
  meta["first_invalid_t"] = m.all_valid ? ordered_json(nullptr) : ordered_json(m.first_invalid_t);
  ordered_json snaps = ordered_json::array();
  for (const auto& [t, name] : snapshots) snaps.push_back({{"t", t}, {"file", name}});
  meta["snapshots"] = snaps;
  meta["config"] = config_json(config);
  write_text(directory / "meta.json", meta.dump(2) + "\n");
  return outcome;
}

std::optional<HalfMassTime> half_mass_time(const TimeSeries& series, std::optional<Window> window) {
  const auto& r = series.records;
  if (r.size() < 2) return std::nullopt;
  const double half = 0.5 * r.front().m0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (r[i].m0 > half) continue;
    const double a = r[i - 1].m0, b = r[i].m0;
    const double w = a == b ? 1.0 : (a - half) / (a - b);
    if (r[i - 1].t > 0.0) {
      return HalfMassTime{std::exp(std::log(r[i - 1].t) + w * (std::log(r[i].t) - std::log(r[i - 1].t))), false};
    }
    return HalfMassTime{r[i - 1].t + w * (r[i].t - r[i - 1].t), false};
  }
  const double t_end = r.back().t;
  try {
    const FitResult fit = fit_inverse_log(series, window.value_or(Window{t_end / 10.0, t_end}));
    if (!(fit.slope > 0.0)) return std::nullopt;
    return HalfMassTime{std::exp((1.0 / half - fit.intercept) / fit.slope), true};
  } catch (const Error&) {
    return std::nullopt;
  }
}

RunContext context_from(const RunConfig& config) {
  RunContext c;
  c.label = config.label;
  c.chi = config.model.chi;
  c.epsilon = config.model.epsilon;
  c.q = config.model.q;
  c.flow = config.flow.is_zero() ? FlowKind::kNone : config.flow.kind;
  c.amplitude = config.flow.amplitude;
  c.t_end = config.stepper.t_end;
  return c;
}

RunContext load_run_context(const fs::path& series_csv) {
  const fs::path meta_path = series_csv.parent_path() / "meta.json";
  if (!fs::exists(meta_path)) {
    throw ConfigError("no meta.json next to '" + series_csv.string() + "'; run hypotheses are unknown");
  }
  const nlohmann::json meta = read_json(meta_path);
  try {
    const auto& config = meta.at("config");
    RunContext c;
    c.label = meta.at("label").get<std::string>();
    c.chi = config.at("model").at("chi").get<double>();
    c.epsilon = config.at("model").at("epsilon").get<double>();
    c.q = config.at("model").at("q").get<double>();
    c.flow = parse_flow_kind(config.at("flow").at("kind").get<std::string>());
    c.amplitude = config.at("flow").at("amplitude").get<double>();
    if (c.flow == FlowKind::kCellular && c.amplitude == 0.0) c.flow = FlowKind::kNone;
    c.t_end = config.at("stepper").at("t_end").get<double>();
    c.status = parse_status(meta.at("status").get<std::string>());
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("meta.json lacks run configuration fields: " + std::string(e.what()));
  }
}

std::vector<SweepRow> summarize_sweep(const fs::path& sweep_dir) {
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(sweep_dir)) {
    if (entry.is_directory() && fs::exists(entry.path() / "meta.json")) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  std::vector<SweepRow> rows;
  for (const auto& dir : dirs) rows.push_back(summarize_run(dir));
  return rows;
}

std::string format_summary_csv(const std::vector<SweepRow>& rows) {
  std::string out = kSummaryHeader;
  out += '\n';
  for (const auto& r : rows) {
    out += fmt::format("{},{:.17g},{:.17g},{:.17g},{},{:.17g},{:.17g},{:.17g},{},{},{:.17g},{:.17g},{},{}\n", r.label,
                       r.epsilon, r.chi, r.amplitude, r.status, r.final_t, r.final_m0, r.half_mass_time,
                       r.half_mass_extrapolated ? 1 : 0, r.fit_model, r.fit_slope, r.fit_r_squared, r.all_valid ? 1 : 0,
                       r.completed ? 1 : 0);
  }
  return out;
}

SweepOutcome run_sweep(const SweepConfig& sweep, const fs::path& directory, int parallelism) {
  sweep.validate();
  const std::vector<RunConfig> runs = sweep.expand();
  fs::create_directories(directory);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> any_failed{false};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < runs.size(); i = next++) {
      try {
        const RunOutcome outcome = run_to_directory(runs[i], directory / runs[i].label, 1);
        if (outcome.exit_code != ExitCode::kOk) any_failed = true;
      } catch (const std::exception& e) {
        any_failed = true;
        std::lock_guard lock(log_mutex);
        fmt::print(stderr, "sweep: run '{}' failed: {}\n", runs[i].label, e.what());
      }
    }
  };
  const int workers = std::clamp(parallelism, 1, static_cast<int>(runs.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SweepOutcome outcome;
  outcome.rows = summarize_sweep(directory);
  write_text(directory / "summary.csv", format_summary_csv(outcome.rows));
  outcome.exit_code = any_failed ? ExitCode::kFailure : ExitCode::kOk;
  return outcome;
}

}  // namespace chemoreact
