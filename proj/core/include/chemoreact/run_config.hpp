#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chemoreact/grid.hpp"
#include "chemoreact/integrator.hpp"
#include "chemoreact/model.hpp"

namespace chemoreact {

enum class IcKind { kGaussian, kTwoGaussians, kPlateau, kCustomCsv };

std::string to_string(IcKind kind);
IcKind parse_ic_kind(const std::string& text);

struct InitialCondition {
  IcKind kind = IcKind::kGaussian;
  /// Target m0(0); the sampled field is rescaled to hit it.
  double mass = 1.0;
  /// Gaussian standard deviation per axis, or plateau radius.
  double width = 0.5;
  /// Explicit centers; empty means box center (gaussian, plateau) or seeded placement (two_gaussians).
  std::vector<std::array<double, 2>> centers;
  std::uint64_t seed = 0;
  /// Plateau edge thickness; 0 selects two grid spacings.
  double edge = 0.0;
  /// Source path of a custom_csv field (informational once `custom` is loaded).
  std::string file;
  std::optional<ScalarField> custom;

  void validate(const GridSpec& grid) const;
};

enum class OutputSpacing { kLinear, kGeometric };
enum class SnapshotMode { kNone, kFinal, kAll };

std::string to_string(OutputSpacing spacing);
std::string to_string(SnapshotMode mode);

struct OutputConfig {
  OutputSpacing spacing = OutputSpacing::kLinear;
  /// Linear cadence.
  double interval = 0.1;
  /// First geometric output time and outputs per decade.
  double first = 0.01;
  int per_decade = 20;
  SnapshotMode snapshots = SnapshotMode::kNone;
  double sobolev_order = 2.0;

  void validate() const;
};

struct RunConfig {
  std::string label = "run";
  GridSpec grid{256, 16.0};
  ModelParams model;
  FlowSpec flow;
  InitialCondition ic;
  StepperConfig stepper;
  OutputConfig output;

  /// Throws ConfigError on the first violated invariant.
  void validate() const;
};

bool is_filesystem_safe(const std::string& label);

ScalarField make_initial_condition(const InitialCondition& ic, const GridSpec& grid);

/// Strictly increasing output times in (0, t_end], always ending at t_end.
std::vector<double> output_times(const OutputConfig& output, double t_end);

}  // namespace chemoreact
