#pragma once

#include <span>
#include <string>
#include <vector>

#include "chemoreact/diagnostics.hpp"

namespace chemoreact {

/// F(z) = z / log(1 / (e z)), defined and strictly increasing on (0, 1/e).
/// Throws DomainError outside that interval.
double decay_transform(double z);

/// Fitted constants of the decay envelopes.
struct EnvelopeParams {
  double t0 = 1.0;
  /// F(m0(t0) / mass_scale) for the no-chemotaxis upper envelope.
  double F0 = 0.0;
  /// Mass normalization applied before F; see check suites.
  double mass_scale = 1.0;
  /// m0(t0) for the lower envelope.
  double m0_ref = 0.0;
  /// Product eps * C(rho_0) of the upper envelope.
  double eps_C = 0.0;
  /// Universal constant C of the lower envelope.
  double lower_C = 0.0;
  double epsilon = 0.0;
  double chi = 0.0;
  double m2 = 0.0;
  /// C(u, m2) of the chemotactic power-law bound.
  double dec1b_C = 0.0;
};

/// Bound on F(m0(t)) for t >= t0: F0 / (1 + eps_C F0 log(t / t0)).
double upper_envelope(double t, const EnvelopeParams& p);

/// Bound m0(t) >= m0_ref / (1 + C eps m0_ref log(t / t0) exp(eps m0_ref)) for t >= t0.
double lower_envelope(double t, const EnvelopeParams& p);

/// Simplified lower bound for small eps m0(0):
/// m0(0) (1 - eps C m0(0)) / (1 + C eps m0(0) log(t / t0)).
/// Throws DomainError unless eps m0(0) <= c0_stand_in.
double simple_lower_envelope(double t, double m0_initial, double C, double epsilon, double t0,
                             double c0_stand_in = 0.1);

/// (2/chi)(1 + sqrt(1 + chi m2 / (4 tau))): the explicit zero-flow chemotactic bound.
double chemo_bound_a(double tau, double chi, double m2);

/// C (chi tau)^{-1/2}, valid for 0 < tau <= chi^{1/3}.
double chemo_bound_b(double tau, double chi, double C);

/// C chi^{-2/3}, the late-time level the power-law bound meets at tau = chi^{1/3}.
double chemo_plateau(double chi, double C);

struct Window {
  double lo = 0.0;
  double hi = 0.0;
};

/// Parses "T_LO:T_HI".
Window parse_window(const std::string& text);

enum class FitModel { kInverseLog, kPowerLaw };

std::string to_string(FitModel model);
FitModel parse_fit_model(const std::string& text);

struct FitResult {
  FitModel model = FitModel::kInverseLog;
  double intercept = 0.0;
  double slope = 0.0;
  double r_squared = 0.0;
  Window window;
  std::size_t count = 0;
};

inline constexpr std::size_t kMinFitPoints = 8;

/// Least squares of 1/m0 against log t over records with t in [lo, hi].
FitResult fit_inverse_log(std::span<const double> t, std::span<const double> m0, Window window);
FitResult fit_inverse_log(const TimeSeries& series, Window window);

/// Least squares of log m0 against log t; the slope is the decay exponent.
FitResult fit_power_law(std::span<const double> t, std::span<const double> m0, Window window);
FitResult fit_power_law(const TimeSeries& series, Window window);

enum class BoundSide { kUpper, kLower };

struct BoundReport {
  /// (value - bound) / bound per checked point.
  std::vector<double> violations;
  /// Worst signed violation: the maximum for upper bounds, the minimum for lower bounds.
  double max_violation = 0.0;
  bool pass = true;
};

BoundReport check_bound(std::span<const double> values, std::span<const double> bounds, BoundSide side, double slack);

/// Calibration: the largest eps_C for which F(m0 / mass_scale) stays under the
/// upper envelope at every (t, m0) with t > t0.
double calibrate_upper_constant(std::span<const double> t, std::span<const double> m0, double t0, double m0_at_t0,
                                double mass_scale);

/// Calibration: the smallest lower_C for which m0 stays above the lower envelope at every t > t0.
double calibrate_lower_constant(std::span<const double> t, std::span<const double> m0, double t0, double m0_at_t0,
                                double epsilon);

/// Calibration: the smallest C with m0(tau) <= C (chi tau)^{-1/2} at every sample.
double calibrate_power_constant(std::span<const double> tau, std::span<const double> m0, double chi);

}  // namespace chemoreact
