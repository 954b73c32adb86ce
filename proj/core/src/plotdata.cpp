#include "chemoreact/plotdata.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>

#include "chemoreact/checks.hpp"
#include "chemoreact/error.hpp"
#include "chemoreact/harness.hpp"
#include "chemoreact/series_io.hpp"
#include "chemoreact/theory.hpp"

namespace chemoreact {
namespace {

namespace fs = std::filesystem;

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

std::string g(double v) { return fmt::format("{:.17g}", v); }

double log_or_nan(double v) { return v > 0.0 ? std::log(v) : std::nan(""); }

/// Envelope columns for the overlay; NaN where the envelope does not apply.
struct Overlay {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
};

Overlay overlay_columns(const TimeSeries& series, const RunContext& ctx) {
  Overlay o;
  const std::size_t k = series.records.size();
  auto add = [&](std::string name) {
    o.names.push_back(std::move(name));
    o.columns.emplace_back(k, std::nan(""));
    return o.columns.size() - 1;
  };
  try {
    if (ctx.chi == 0.0) {
      const CheckReport upper = run_check(series, ctx, Theorem::kT11);
      const CheckReport lower = run_check(series, ctx, Theorem::kT12);
      if (upper.excluded) return o;
      const std::size_t fz = add("F_of_scaled_m0");
      const std::size_t ue = add("F_upper_envelope");
      const std::size_t le = add("m0_lower_envelope");
      for (std::size_t i = 0; i < k; ++i) {
        const double t = series.records[i].t;
        const double z = series.records[i].m0 / upper.params.mass_scale;
        if (z > 0.0 && z < std::exp(-1.0)) o.columns[fz][i] = decay_transform(z);
        if (t >= upper.params.t0) o.columns[ue][i] = upper_envelope(t, upper.params);
        if (t >= lower.params.t0) o.columns[le][i] = lower_envelope(t, lower.params);
      }
    } else if (ctx.flow == FlowKind::kNone) {
      const double m2 = series.records.front().m2;
      const std::size_t a = add("chemo_bound_a");
      for (std::size_t i = 0; i < k; ++i) {
        const double t = series.records[i].t;
        if (t > 0.0 && std::isfinite(m2)) o.columns[a][i] = chemo_bound_a(t, ctx.chi, m2);
      }
    } else {
      const CheckReport b = run_check(series, ctx, Theorem::kT13b);
      if (b.excluded) return o;
      const std::size_t col = add("chemo_bound_b");
      const std::size_t plateau = add("chemo_plateau");
      const double edge = std::cbrt(ctx.chi);
      for (std::size_t i = 0; i < k; ++i) {
        const double t = series.records[i].t;
        if (t > 0.0 && t <= edge) o.columns[col][i] = chemo_bound_b(t, ctx.chi, b.params.dec1b_C);
        if (t >= edge) o.columns[plateau][i] = chemo_plateau(ctx.chi, b.params.dec1b_C);
      }
    }
  } catch (const Error&) {
    // Envelopes need enough records in their windows; otherwise the overlay carries the series only.
    o = Overlay{};
  }
  return o;
}

std::vector<fs::path> emit_run(const fs::path& run_dir, const fs::path& out) {
  const fs::path series_path = run_dir / "series.csv";
  const TimeSeries series = read_series_csv(series_path);
  fs::create_directories(out);
  std::vector<fs::path> written;

  std::string a = "# m0 versus t\n# columns: t m0\n";
  std::string b = "# inverse mass versus log time (t = 0 gives -inf)\n# columns: log_t inv_m0\n";
  std::string c = "# log mass versus log time (t = 0 gives -inf)\n# columns: log_t log_m0\n";
  for (const auto& r : series.records) {
    const double lt = r.t > 0.0 ? std::log(r.t) : -HUGE_VAL;
    a += g(r.t) + "\t" + g(r.m0) + "\n";
    b += g(lt) + "\t" + g(1.0 / r.m0) + "\n";
    c += g(lt) + "\t" + g(log_or_nan(r.m0)) + "\n";
  }
  for (const auto& [name, text] : {std::pair{"m0_vs_t.tsv", a}, {"inv_m0_vs_logt.tsv", b}, {"logm0_vs_logt.tsv", c}}) {
    write_text(out / name, text);
    written.push_back(out / name);
  }

  Overlay overlay;
  if (fs::exists(run_dir / "meta.json")) overlay = overlay_columns(series, load_run_context(series_path));
  std::string header = "t\tm0";
  for (const auto& name : overlay.names) header += "\t" + name;
  std::string d = "# series and envelope columns on the record times; nan where an envelope does not apply\n";
  d += "# columns: " + header + "\n";
  for (std::size_t i = 0; i < series.records.size(); ++i) {
    d += g(series.records[i].t) + "\t" + g(series.records[i].m0);
    for (const auto& col : overlay.columns) d += "\t" + g(col[i]);
    d += "\n";
  }
  write_text(out / "overlay.tsv", d);
  written.push_back(out / "overlay.tsv");
  return written;
}

}  // namespace

double interpolate_log_time(std::span<const double> t, std::span<const double> y, double at) {
  if (t.empty() || !(at > 0.0) || at < t.front() || at > t.back()) return std::nan("");
  const auto it = std::lower_bound(t.begin(), t.end(), at);
  const std::size_t hi = static_cast<std::size_t>(it - t.begin());
  if (t[hi] == at) return y[hi];
  const std::size_t lo = hi - 1;
  if (!(t[lo] > 0.0)) return y[lo] + (y[hi] - y[lo]) * (at - t[lo]) / (t[hi] - t[lo]);
  const double w = (std::log(at) - std::log(t[lo])) / (std::log(t[hi]) - std::log(t[lo]));
  return y[lo] + w * (y[hi] - y[lo]);
}

std::vector<fs::path> emit_plotdata(const fs::path& source, const fs::path& out_dir) {
  const fs::path out = out_dir.empty() ? source : out_dir;
  if (fs::exists(source / "series.csv")) return emit_run(source, out);
  if (!fs::exists(source / "summary.csv")) {
    throw InsufficientDataError("'" + source.string() + "' holds neither series.csv nor summary.csv");
  }

  std::vector<fs::path> written;
  std::vector<fs::path> runs;
  for (const auto& entry : fs::directory_iterator(source)) {
    if (entry.is_directory() && fs::exists(entry.path() / "series.csv")) runs.push_back(entry.path());
  }
  std::sort(runs.begin(), runs.end());
  if (runs.empty()) throw InsufficientDataError("sweep '" + source.string() + "' has no run directories");

  std::vector<std::string> labels;
  std::vector<std::vector<double>> ts, ms;
  for (const auto& dir : runs) {
    const auto files = emit_run(dir, out / dir.filename());
    written.insert(written.end(), files.begin(), files.end());
    const TimeSeries s = read_series_csv(dir / "series.csv");
    labels.push_back(dir.filename().string());
    ts.emplace_back();
    ms.emplace_back();
    for (const auto& r : s.records) {
      ts.back().push_back(r.t);
      ms.back().push_back(r.m0);
    }
  }

  // Shared grid: the positive record times of the first run.
  std::string text = "# m0 of every run on a shared t grid, interpolated linearly in log t; nan outside a run's span\n";
  text += "# columns: t";
  for (const auto& l : labels) text += "\t" + l;
  text += "\n";
  for (double t : ts.front()) {
    if (!(t > 0.0)) continue;
    text += g(t);
    for (std::size_t r = 0; r < runs.size(); ++r) text += "\t" + g(interpolate_log_time(ts[r], ms[r], t));
    text += "\n";
  }
  write_text(out / "comparison.tsv", text);
  written.push_back(out / "comparison.tsv");
  return written;
}

}  // namespace chemoreact
