#include "chemoreact/checks.hpp"

#include <fmt/format.h>

#include <cmath>
#include <json.hpp>
#include <numbers>

#include "chemoreact/error.hpp"

namespace chemoreact {
namespace {

using nlohmann::ordered_json;

ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

struct Columns {
  std::vector<double> t;
  std::vector<double> m0;
};

Columns select(const TimeSeries& series, double lo, double hi, bool open_lo = false) {
  Columns c;
  for (const auto& r : series.records) {
    if (r.t > hi || r.t < lo || (open_lo && r.t == lo)) continue;
    c.t.push_back(r.t);
    c.m0.push_back(r.m0);
  }
  return c;
}

void require(bool ok, Theorem theorem, const std::string& why) {
  if (!ok) throw HypothesisMismatchError(to_string(theorem) + " requires " + why);
}

void require_points(const Columns& c, std::size_t minimum, const char* what) {
  if (c.t.size() < minimum) {
    throw InsufficientDataError(fmt::format("{} holds {} records, need at least {}", what, c.t.size(), minimum));
  }
}

/// First record at or after t; its time becomes the envelope reference t0.
const DiagnosticsRecord& reference_record(const TimeSeries& series, double t) {
  for (const auto& r : series.records) {
    if (r.t >= t && r.t > 0.0) return r;
  }
  throw InsufficientDataError(fmt::format("no record at or after t = {}", t));
}

Window default_window(const RunContext& ctx, Theorem theorem) {
  if (theorem == Theorem::kT13a) return {0.01, ctx.t_end};
  if (theorem == Theorem::kT13b) {
    const double c = std::cbrt(ctx.chi);
    return {c / std::sqrt(10.0), std::min(c, ctx.t_end)};
  }
  return {ctx.t_end / 10.0, ctx.t_end};
}

void check_t11(const TimeSeries& series, const RunContext& ctx, CheckReport& report, double slack) {
  const double m0_initial = series.records.front().m0;
  EnvelopeParams& p = report.params;
  const DiagnosticsRecord& ref = reference_record(series, report.calibration.lo);
  p.t0 = ref.t;
  p.epsilon = ctx.epsilon;
  // F needs z < 1/e; scaling by e^2 m0(0) maps the whole run into (0, e^-2].
  p.mass_scale = std::exp(2.0) * m0_initial;
  p.F0 = decay_transform(ref.m0 / p.mass_scale);
  const Columns cal = select(series, p.t0, report.calibration.hi, true);
  require_points(cal, 1, "calibration window");
  p.eps_C = calibrate_upper_constant(cal.t, cal.m0, p.t0, ref.m0, p.mass_scale);

  const Columns test = select(series, report.window.lo, report.window.hi);
  require_points(test, 1, "test window");
  std::vector<double> values, bounds;
  for (std::size_t i = 0; i < test.t.size(); ++i) {
    values.push_back(decay_transform(test.m0[i] / p.mass_scale));
    bounds.push_back(upper_envelope(test.t[i], p));
  }
  report.bound = check_bound(values, bounds, BoundSide::kUpper, slack);
  report.checked = test.t.size();
}

void check_t12(const TimeSeries& series, const RunContext& ctx, CheckReport& report, const CheckOptions& options) {
  const double m0_initial = series.records.front().m0;
  EnvelopeParams& p = report.params;
  const DiagnosticsRecord& ref = reference_record(series, report.calibration.lo);
  p.t0 = ref.t;
  p.m0_ref = ref.m0;
  p.epsilon = ctx.epsilon;
  const Columns cal = select(series, p.t0, report.calibration.hi, true);
  require_points(cal, 1, "calibration window");
  p.lower_C = calibrate_lower_constant(cal.t, cal.m0, p.t0, ref.m0, ctx.epsilon);

  const Columns test = select(series, report.window.lo, report.window.hi);
  require_points(test, 1, "test window");
  std::vector<double> bounds;
  for (double t : test.t) bounds.push_back(lower_envelope(t, p));
  report.bound = check_bound(test.m0, bounds, BoundSide::kLower, options.slack);
  report.checked = test.t.size();

  const bool simplified = ctx.epsilon * m0_initial <= options.c0_stand_in;
  report.extras.emplace_back("simplified_applicable", simplified ? 1.0 : 0.0);
  report.extras.emplace_back("c0_stand_in", options.c0_stand_in);
  if (simplified && ctx.epsilon > 0.0) {
    std::vector<double> simple;
    for (double t : test.t) {
      simple.push_back(simple_lower_envelope(t, m0_initial, p.lower_C, ctx.epsilon, p.t0, options.c0_stand_in));
    }
    const BoundReport s = check_bound(test.m0, simple, BoundSide::kLower, options.slack);
    report.extras.emplace_back("simplified_max_violation", s.max_violation);
  }
}

void check_t13a(const TimeSeries& series, const RunContext& ctx, CheckReport& report, double slack) {
  EnvelopeParams& p = report.params;
  p.chi = ctx.chi;
  p.epsilon = ctx.epsilon;
  p.m2 = series.records.front().m2;
  if (!std::isfinite(p.m2)) throw InsufficientDataError("initial second moment is undefined (delocalized data)");
  const Columns test = select(series, std::max(report.window.lo, 1e-300), report.window.hi);
  require_points(test, 1, "test window");
  std::vector<double> bounds;
  for (double tau : test.t) bounds.push_back(chemo_bound_a(tau, ctx.chi, p.m2));
  report.bound = check_bound(test.m0, bounds, BoundSide::kUpper, slack);
  report.checked = test.t.size();
}

void check_t13b(const TimeSeries& series, const RunContext& ctx, CheckReport& report, double slack) {
  EnvelopeParams& p = report.params;
  p.chi = ctx.chi;
  p.epsilon = ctx.epsilon;
  p.m2 = series.records.front().m2;
  const double edge = std::cbrt(ctx.chi);
  if (report.window.hi > edge * (1.0 + 1e-12)) {
    throw DomainError(fmt::format("t13b window must end at or before chi^(1/3) = {}", edge));
  }
  const Columns cal = select(series, report.calibration.lo, report.calibration.hi);
  require_points(cal, 1, "calibration window");
  p.dec1b_C = calibrate_power_constant(cal.t, cal.m0, ctx.chi);

  const Columns test = select(series, report.window.lo, report.window.hi);
  require_points(test, 1, "test window");
  std::vector<double> bounds;
  for (double tau : test.t) bounds.push_back(chemo_bound_b(tau, ctx.chi, p.dec1b_C));
  report.bound = check_bound(test.m0, bounds, BoundSide::kUpper, slack);
  report.checked = test.t.size();

  report.extras.emplace_back("plateau_bound", chemo_plateau(ctx.chi, p.dec1b_C));
  if (series.records.back().t > edge) report.extras.emplace_back("late_m0", series.records.back().m0);
  try {
    const FitResult fit = fit_power_law(series, Window{0.1 * edge, edge});
    report.extras.emplace_back("power_law_slope", fit.slope);
    report.extras.emplace_back("power_law_r_squared", fit.r_squared);
  } catch (const Error&) {
    // Reported without the slope when the decade holds too few records.
  }
}

const char* model_name(Theorem theorem) {
  switch (theorem) {
    case Theorem::kT11:
      return "F_upper_envelope";
    case Theorem::kT12:
      return "lower_envelope";
    case Theorem::kT13a:
      return "explicit_chemotactic_bound";
    case Theorem::kT13b:
      return "power_law_bound";
  }
  return "";
}

}  // namespace

std::string to_string(Theorem theorem) {
  switch (theorem) {
    case Theorem::kT11:
      return "t11";
    case Theorem::kT12:
      return "t12";
    case Theorem::kT13a:
      return "t13a";
    case Theorem::kT13b:
      return "t13b";
  }
  return "";
}

Theorem parse_theorem(const std::string& text) {
  for (Theorem t : {Theorem::kT11, Theorem::kT12, Theorem::kT13a, Theorem::kT13b}) {
    if (to_string(t) == text) return t;
  }
  throw ConfigError("unknown check '" + text + "' (expected t11, t12, t13a or t13b)");
}

CheckReport run_check(const TimeSeries& series, const RunContext& context, Theorem theorem,
                      const CheckOptions& options) {
  switch (theorem) {
    case Theorem::kT11:
    case Theorem::kT12:
      require(context.chi == 0.0, theorem, "chi = 0");
      break;
    case Theorem::kT13a:
      require(context.chi > 0.0, theorem, "chi > 0");
      require(context.flow == FlowKind::kNone, theorem, "u = 0 (flow kind none)");
      break;
    case Theorem::kT13b:
      require(context.chi > 0.0, theorem, "chi > 0");
      require(context.flow != FlowKind::kNone, theorem, "a nonzero flow");
      break;
  }
  if (series.records.empty()) throw InsufficientDataError("series has no records");

  CheckReport report;
  report.theorem = theorem;
  report.label = context.label;
  report.window = options.window.value_or(default_window(context, theorem));
  if (theorem == Theorem::kT13a) {
    report.calibration = {0.0, 0.0};
  } else {
    report.calibration = options.calibration.value_or(Window{report.window.lo / 10.0, report.window.lo});
  }

  if (!series.metadata.all_valid) {
    report.excluded = true;
    report.note = fmt::format("excluded: boundary-mass validity flag false from t = {}", series.metadata.first_invalid_t);
    return report;
  }

  switch (theorem) {
    case Theorem::kT11:
      check_t11(series, context, report, options.slack);
      break;
    case Theorem::kT12:
      check_t12(series, context, report, options);
      break;
    case Theorem::kT13a:
      check_t13a(series, context, report, options.slack);
      break;
    case Theorem::kT13b:
      check_t13b(series, context, report, options.slack);
      break;
  }
  report.pass = report.bound.pass;
  if (context.status != RunStatus::kCompleted) {
    report.note = "run did not complete (" + to_string(context.status) + "); checked the records it produced";
  }
  return report;
}

std::string check_report_json(const CheckReport& r) {
  ordered_json j;
  j["theorem"] = to_string(r.theorem);
  j["label"] = r.label;
  j["model"] = model_name(r.theorem);
  j["window"] = {r.window.lo, r.window.hi};
  j["calibration_window"] = {r.calibration.lo, r.calibration.hi};
  const EnvelopeParams& p = r.params;
  ordered_json coeffs;
  switch (r.theorem) {
    case Theorem::kT11:
      coeffs = {{"t0", p.t0}, {"F0", p.F0}, {"mass_scale", p.mass_scale}, {"eps_C", p.eps_C}};
      break;
    case Theorem::kT12:
      coeffs = {{"t0", p.t0}, {"m0_ref", p.m0_ref}, {"epsilon", p.epsilon}, {"C", p.lower_C}};
      break;
    case Theorem::kT13a:
      coeffs = {{"chi", p.chi}, {"m2", number(p.m2)}};
      break;
    case Theorem::kT13b:
      coeffs = {{"chi", p.chi}, {"m2", number(p.m2)}, {"C", p.dec1b_C}};
      break;
  }
  j["coefficients"] = coeffs;
  j["r_squared"] = nullptr;
  j["max_violation"] = r.excluded ? ordered_json(nullptr) : number(r.bound.max_violation);
  j["checked"] = r.checked;
  j["pass"] = r.pass;
  j["excluded"] = r.excluded;
  j["note"] = r.note;
  ordered_json extras = ordered_json::object();
  for (const auto& [key, value] : r.extras) {
    if (key == "power_law_r_squared") j["r_squared"] = number(value);
    extras[key] = number(value);
  }
  j["extras"] = extras;
  return j.dump(2) + "\n";
}

std::string fit_report_json(const FitResult& fit) {
  ordered_json j;
  j["model"] = to_string(fit.model);
  j["window"] = {fit.window.lo, fit.window.hi};
  j["coefficients"] = {{"intercept", fit.intercept}, {"slope", fit.slope}};
  j["r_squared"] = fit.r_squared;
  j["count"] = fit.count;
  return j.dump(2) + "\n";
}

}  // namespace chemoreact
