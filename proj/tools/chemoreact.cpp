#include <fmt/format.h>

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <optional>

#include "chemoreact/checks.hpp"
#include "chemoreact/config_io.hpp"
#include "chemoreact/error.hpp"
#include "chemoreact/harness.hpp"
#include "chemoreact/platform.hpp"
#include "chemoreact/plotdata.hpp"
#include "chemoreact/series_io.hpp"
#include "chemoreact/theory.hpp"

namespace fs = std::filesystem;
using namespace chemoreact;

namespace {

int code(ExitCode c) { return static_cast<int>(c); }

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    fmt::print("{}", text);
    return;
  }
  if (const fs::path parent = fs::path(out).parent_path(); !parent.empty()) fs::create_directories(parent);
  std::ofstream file(out, std::ios::binary);
  if (!file) throw Error("cannot write '" + out + "'");
  file << text;
}

std::optional<Window> window_from(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_window(text);
}

}  // namespace

int main(int argc, char** argv) {
  retain_field_allocations();
  CLI::App app{"Pseudo-spectral chemotaxis-reaction-advection simulator and decay-law harness"};
  app.set_version_flag("--version", code_version());
  app.require_subcommand(1);

  std::string config, out, series, window, model = "inverse_log", theorem, source;
  int threads = 1;
  double slack = 0.05;

  auto* run = app.add_subcommand("run", "Integrate one configuration into a run directory");
  run->add_option("--config", config, "Run config (INI)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "Run directory")->required();
  run->add_option("--threads", threads, "Transform threads")->check(CLI::PositiveNumber);

  auto* sweep = app.add_subcommand("sweep", "Run an epsilon/chi/amplitude sweep");
  sweep->add_option("--config", config, "Sweep config (INI with a [sweep] section)")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out, "Sweep directory")->required();
  auto* sweep_threads = sweep->add_option("--threads", threads, "Concurrent runs (default: sweep.parallelism)")
                            ->check(CLI::PositiveNumber);

  auto* fit = app.add_subcommand("fit", "Fit a decay law to a series");
  fit->add_option("series", series, "series.csv")->required()->check(CLI::ExistingFile);
  fit->add_option("--model", model, "inverse_log or power_law");
  fit->add_option("--window", window, "T_LO:T_HI (default t_end/10:t_end)");
  fit->add_option("--out", out, "Report path (default stdout)");

  auto* check = app.add_subcommand("check", "Assert a decay bound on a run's series");
  check->add_option("series", series, "series.csv with meta.json alongside")->required()->check(CLI::ExistingFile);
  check->add_option("--theorem", theorem, "t11, t12, t13a or t13b")->required();
  check->add_option("--slack", slack, "Relative slack")->check(CLI::NonNegativeNumber);
  check->add_option("--window", window, "Test window T_LO:T_HI");
  check->add_option("--out", out, "Report path (default stdout)");

  auto* plot = app.add_subcommand("emit-plotdata", "Write plot-ready TSV files for a run or sweep directory");
  plot->add_option("source", source, "Run or sweep directory")->required()->check(CLI::ExistingDirectory);
  plot->add_option("--out", out, "Output directory (default: the source)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? 0 : code(ExitCode::kConfigError);
  }

  try {
    if (*run) {
      const RunConfig cfg = load_run_config(config);
      const RunOutcome outcome = run_to_directory(cfg, out, threads);
      const auto& m = outcome.series.metadata;
      if (outcome.exit_code != ExitCode::kOk) {
        fmt::print(stderr, "run '{}' stopped: {} ({})\n", cfg.label, to_string(m.status), m.failure_reason);
      } else if (!m.all_valid) {
        fmt::print(stderr, "run '{}' lost boundary-mass validity at t = {}\n", cfg.label, m.first_invalid_t);
      }
      return code(outcome.exit_code);
    }
    if (*sweep) {
      const SweepConfig cfg = load_sweep_config(config);
      const int parallelism = sweep_threads->count() > 0 ? threads : cfg.parallelism;
      const SweepOutcome outcome = run_sweep(cfg, out, parallelism);
      for (const auto& row : outcome.rows) {
        if (!row.completed) fmt::print(stderr, "sweep run '{}' stopped: {}\n", row.label, row.status);
      }
      return code(outcome.exit_code);
    }
    if (*fit) {
      const TimeSeries s = read_series_csv(series);
      if (s.records.empty()) throw InsufficientDataError("series has no records");
      const double t_end = s.records.back().t;
      const Window w = window_from(window).value_or(Window{t_end / 10.0, t_end});
      const FitModel m = parse_fit_model(model);
      const FitResult result = m == FitModel::kPowerLaw ? fit_power_law(s, w) : fit_inverse_log(s, w);
      emit(fit_report_json(result), out);
      return 0;
    }
    if (*check) {
      const Theorem which = parse_theorem(theorem);
      const TimeSeries s = read_series_csv(series);
      const RunContext ctx = load_run_context(series);
      CheckOptions options;
      options.slack = slack;
      options.window = window_from(window);
      const CheckReport report = run_check(s, ctx, which, options);
      if (report.excluded) fmt::print(stderr, "check {}: run '{}' {}\n", theorem, ctx.label, report.note);
      emit(check_report_json(report), out);
      return report.pass ? 0 : code(ExitCode::kFailure);
    }
    if (*plot) {
      for (const auto& file : emit_plotdata(source, out)) fmt::print("{}\n", file.string());
      return 0;
    }
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return code(exit_code_for(e));
  }
  return 0;
}
