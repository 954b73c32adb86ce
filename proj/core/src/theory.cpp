#include "chemoreact/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chemoreact/error.hpp"

namespace chemoreact {
namespace {

struct Line {
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
};

Line least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 1e-300)) throw DegenerateWindowError("fit window has zero variance in log t");
  Line line;
  line.slope = sxy / sxx;
  line.intercept = my - line.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - line.intercept - line.slope * x[i];
    ss_res += r * r;
  }
  // A constant response is fit exactly by a flat line.
  line.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return line;
}

template <typename Transform>
FitResult fit_log_time(std::span<const double> t, std::span<const double> m0, Window window, FitModel model,
                       Transform&& response) {
  if (t.size() != m0.size()) throw InsufficientDataError("time and mass columns differ in length");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] <= 0.0 || t[i] < window.lo || t[i] > window.hi) continue;
    if (!(m0[i] > 0.0)) throw InsufficientDataError("fit requires m0 > 0 throughout the window");
    x.push_back(std::log(t[i]));
    y.push_back(response(m0[i]));
  }
  if (x.size() < kMinFitPoints) {
    throw InsufficientDataError("fit needs at least " + std::to_string(kMinFitPoints) + " records in the window, got " +
                                std::to_string(x.size()));
  }
  const Line line = least_squares(x, y);
  FitResult out;
  out.model = model;
  out.intercept = line.intercept;
  out.slope = line.slope;
  out.r_squared = line.r_squared;
  out.window = window;
  out.count = x.size();
  return out;
}

std::pair<std::vector<double>, std::vector<double>> columns(const TimeSeries& series) {
  std::vector<double> t, m0;
  for (const auto& r : series.records) {
    t.push_back(r.t);
    m0.push_back(r.m0);
  }
  return {t, m0};
}

}  // namespace

double decay_transform(double z) {
  if (!(z > 0.0) || !(z < std::exp(-1.0))) {
    throw DomainError("F(z) requires 0 < z < 1/e, got " + std::to_string(z));
  }
  return z / std::log(1.0 / (std::numbers::e * z));
}

double upper_envelope(double t, const EnvelopeParams& p) {
  if (!(p.t0 > 0.0) || t < p.t0) throw DomainError("upper envelope requires t >= t0 > 0");
  return p.F0 / (1.0 + p.eps_C * p.F0 * std::log(t / p.t0));
}

double lower_envelope(double t, const EnvelopeParams& p) {
  if (!(p.t0 > 0.0) || t < p.t0) throw DomainError("lower envelope requires t >= t0 > 0");
  const double growth = p.lower_C * p.epsilon * p.m0_ref * std::log(t / p.t0) * std::exp(p.epsilon * p.m0_ref);
  return p.m0_ref / (1.0 + growth);
}

double simple_lower_envelope(double t, double m0_initial, double C, double epsilon, double t0, double c0_stand_in) {
  if (epsilon * m0_initial > c0_stand_in) {
    throw DomainError("simplified lower bound needs eps * m0(0) <= " + std::to_string(c0_stand_in));
  }
  if (!(t0 > 0.0) || t < t0) throw DomainError("simplified lower bound requires t >= t0 > 0");
  return m0_initial * (1.0 - epsilon * C * m0_initial) / (1.0 + C * epsilon * m0_initial * std::log(t / t0));
}

double chemo_bound_a(double tau, double chi, double m2) {
  if (!(tau > 0.0)) throw DomainError("chemo_bound_a requires tau > 0");
  if (!(chi > 0.0)) throw DomainError("chemo_bound_a requires chi > 0");
  if (m2 < 0.0) throw DomainError("chemo_bound_a requires m2 >= 0");
  return (2.0 / chi) * (1.0 + std::sqrt(1.0 + chi * m2 / (4.0 * tau)));
}

double chemo_bound_b(double tau, double chi, double C) {
  if (!(chi > 0.0)) throw DomainError("chemo_bound_b requires chi > 0");
  if (!(tau > 0.0) || tau > std::cbrt(chi) * (1.0 + 1e-12)) {
    throw DomainError("chemo_bound_b requires 0 < tau <= chi^(1/3)");
  }
  return C / std::sqrt(chi * tau);
}

double chemo_plateau(double chi, double C) {
  if (!(chi > 0.0)) throw DomainError("chemo_plateau requires chi > 0");
  return C * std::pow(chi, -2.0 / 3.0);
}

Window parse_window(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("window must look like T_LO:T_HI");
  Window w;
  try {
    w.lo = std::stod(text.substr(0, colon));
    w.hi = std::stod(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw ConfigError("window bounds must be numbers: '" + text + "'");
  }
  if (!(w.lo < w.hi)) throw ConfigError("window needs T_LO < T_HI");
  return w;
}

std::string to_string(FitModel model) { return model == FitModel::kPowerLaw ? "power_law" : "inverse_log"; }

FitModel parse_fit_model(const std::string& text) {
  if (text == "inverse_log") return FitModel::kInverseLog;
  if (text == "power_law") return FitModel::kPowerLaw;
  throw ConfigError("unknown fit model '" + text + "' (expected inverse_log or power_law)");
}

FitResult fit_inverse_log(std::span<const double> t, std::span<const double> m0, Window window) {
  return fit_log_time(t, m0, window, FitModel::kInverseLog, [](double m) { return 1.0 / m; });
}

FitResult fit_inverse_log(const TimeSeries& series, Window window) {
  const auto [t, m0] = columns(series);
  return fit_inverse_log(t, m0, window);
}

FitResult fit_power_law(std::span<const double> t, std::span<const double> m0, Window window) {
  return fit_log_time(t, m0, window, FitModel::kPowerLaw, [](double m) { return std::log(m); });
}

FitResult fit_power_law(const TimeSeries& series, Window window) {
  const auto [t, m0] = columns(series);
  return fit_power_law(t, m0, window);
}

BoundReport check_bound(std::span<const double> values, std::span<const double> bounds, BoundSide side, double slack) {
  BoundReport report;
  report.max_violation = side == BoundSide::kUpper ? -std::numeric_limits<double>::infinity()
                                                   : std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = (values[i] - bounds[i]) / bounds[i];
    report.violations.push_back(v);
    report.max_violation = side == BoundSide::kUpper ? std::max(report.max_violation, v)
                                                     : std::min(report.max_violation, v);
  }
  if (values.empty()) report.max_violation = 0.0;
  report.pass = side == BoundSide::kUpper ? report.max_violation <= slack : report.max_violation >= -slack;
  return report;
}

double calibrate_upper_constant(std::span<const double> t, std::span<const double> m0, double t0, double m0_at_t0,
                                double mass_scale) {
  const double inv_F0 = 1.0 / decay_transform(m0_at_t0 / mass_scale);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] <= t0) continue;
    const double chord = (1.0 / decay_transform(m0[i] / mass_scale) - inv_F0) / std::log(t[i] / t0);
    best = std::min(best, chord);
  }
  if (!std::isfinite(best)) throw InsufficientDataError("calibration window has no samples after t0");
  return std::max(best, 0.0);
}

double calibrate_lower_constant(std::span<const double> t, std::span<const double> m0, double t0, double m0_at_t0,
                                double epsilon) {
  if (!(epsilon > 0.0)) return 0.0;
  const double scale = epsilon * std::exp(epsilon * m0_at_t0);
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] <= t0) continue;
    const double chord = (1.0 / m0[i] - 1.0 / m0_at_t0) / (scale * std::log(t[i] / t0));
    best = std::max(best, chord);
  }
  if (!std::isfinite(best)) throw InsufficientDataError("calibration window has no samples after t0");
  return std::max(best, 0.0);
}

double calibrate_power_constant(std::span<const double> tau, std::span<const double> m0, double chi) {
  double best = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (tau[i] <= 0.0) continue;
    best = std::max(best, m0[i] * std::sqrt(chi * tau[i]));
    any = true;
  }
  if (!any) throw InsufficientDataError("calibration window has no samples with tau > 0");
  return best;
}

}  // namespace chemoreact
