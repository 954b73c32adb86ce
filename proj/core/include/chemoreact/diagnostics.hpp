#pragma once

#include <string>
#include <vector>

#include "chemoreact/grid.hpp"

namespace chemoreact {

/// One output-time row. Column order of the CSV form is fixed:
/// t, m0, m2, l2sq, linf, hs, min_val, area, balance_residual, validity_flag.
struct DiagnosticsRecord {
  double t = 0.0;
  double m0 = 0.0;
  /// Second moment about the torus centroid (minimal-image distance).
  double m2 = 0.0;
  double l2sq = 0.0;
  double linf = 0.0;
  /// Homogeneous Sobolev seminorm of order s (s = 2 by default).
  double hs = 0.0;
  double min_val = 0.0;
  /// m0^2 / l2sq, the effective support area.
  double area = 0.0;
  /// Cumulative |m0(t) - m0(0) + eps * int_0^t ||rho||_{L^q}^q dt|, accumulated at step granularity.
  double balance_residual = 0.0;
  /// Boundary-mass flag: fraction of mass within one cell of the box edge below 1e-6.
  bool valid = true;
};

enum class RunStatus { kCompleted, kBlowUp, kInvalidState, kStepCollapse, kFailed };

std::string to_string(RunStatus status);

struct SeriesMetadata {
  std::string label;
  RunStatus status = RunStatus::kCompleted;
  std::string failure_reason;
  long steps = 0;
  double min_value_seen = 0.0;
  bool all_valid = true;
  /// Time of the first record whose validity flag is false; negative if none.
  double first_invalid_t = -1.0;
};

struct TimeSeries {
  std::vector<DiagnosticsRecord> records;
  SeriesMetadata metadata;

  bool completed() const { return metadata.status == RunStatus::kCompleted; }
};

/// Fraction of mass that must stay out of the edge band for a record to be valid.
inline constexpr double kBoundaryMassTolerance = 1e-6;

double mass(const ScalarField& rho);

struct Centroid {
  double x = 0.0;
  double y = 0.0;
  /// Smaller of the per-axis circular resultant lengths, in [0, 1].
  double concentration = 0.0;
};

/// Circular-mean centroid; throws DelocalizedStateError for near-uniform densities.
Centroid torus_centroid(const ScalarField& rho);
double second_moment(const ScalarField& rho);

struct Norms {
  double l2sq = 0.0;
  double linf = 0.0;
  double hs = 0.0;
};

Norms norms(const ScalarField& rho, double s = 2.0);

/// m0^2 / l2sq; +infinity when l2sq underflows.
double interaction_area(double m0, double l2sq);
double interaction_area(const DiagnosticsRecord& record);

/// Record-granularity mass-balance residual for q = 2: |m0_k - m0_0 + eps * trapezoid(l2sq)|.
std::vector<double> balance_residual(const TimeSeries& series, double epsilon);

/// Share of |rho| mass in the cells touching the box edge.
double boundary_mass_fraction(const ScalarField& rho);

/// Optional weighted norm int (|rho| + |grad rho|)(1 + |x - centroid|^order) dx.
double weighted_moment_norm(const ScalarField& rho, int order);

DiagnosticsRecord make_record(const ScalarField& rho, double t, double sobolev_order, double balance_residual);

}  // namespace chemoreact
