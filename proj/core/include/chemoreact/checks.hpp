#pragma once

#include <optional>
#include <string>

#include "chemoreact/harness.hpp"
#include "chemoreact/theory.hpp"

namespace chemoreact {

/// Named assertion suites: t11 upper envelope and t12 lower envelope (chi = 0), t13a explicit
/// chemotactic bound (u = 0), t13b power-law bound with a fitted constant (u != 0).
enum class Theorem { kT11, kT12, kT13a, kT13b };

std::string to_string(Theorem theorem);
Theorem parse_theorem(const std::string& text);

struct CheckOptions {
  double slack = 0.05;
  /// Test window; the calibration window defaults to the decade below it.
  std::optional<Window> window;
  std::optional<Window> calibration;
  /// eps * m0(0) threshold standing in for the unknown c0 of the simplified lower bound.
  double c0_stand_in = 0.1;
};

struct CheckReport {
  Theorem theorem = Theorem::kT11;
  std::string label;
  Window calibration;
  Window window;
  EnvelopeParams params;
  BoundReport bound;
  std::size_t checked = 0;
  bool pass = false;
  /// True when the run was gated out by its boundary-mass validity flags.
  bool excluded = false;
  std::string note;
  /// Extra scalar results specific to a suite (fit slopes, plateau values, simplified bound).
  std::vector<std::pair<std::string, double>> extras;
};

/// Throws HypothesisMismatchError when `context` violates the suite's hypotheses and
/// InsufficientDataError when a window holds too few records.
CheckReport run_check(const TimeSeries& series, const RunContext& context, Theorem theorem,
                      const CheckOptions& options = {});

std::string check_report_json(const CheckReport& report);
std::string fit_report_json(const FitResult& fit);

}  // namespace chemoreact
