#pragma once

#include <functional>
#include <optional>
#include <string>

#include "chemoreact/grid.hpp"
#include "chemoreact/spectral.hpp"

namespace chemoreact {

/// Physics knobs of d_t rho + u.grad rho = lap rho + chi div(rho grad lap^{-1} rho) - eps rho^q.
struct ModelParams {
  double chi = 0.0;
  double epsilon = 0.0;
  double q = 2.0;

  void validate() const;
};

enum class FlowKind { kNone, kCellular, kCustom };

std::string to_string(FlowKind kind);
FlowKind parse_flow_kind(const std::string& text);

/// Prescribed incompressible flow, always built from a stream function H with u = (-d_y H, d_x H).
struct FlowSpec {
  FlowKind kind = FlowKind::kNone;
  /// Stream-function amplitude A; for cellular flows H = A sin(2 pi m x / L) sin(2 pi m y / L).
  double amplitude = 0.0;
  /// m in the cellular stream function.
  int wavenumber = 1;
  /// Sampled H for kind == kCustom.
  std::optional<ScalarField> custom_stream;
  /// Source path of custom_stream when loaded from a config.
  std::string file;
  /// Optional time-dependent H(t) for kind == kCustom; takes precedence over custom_stream.
  std::function<ScalarField(double)> stream_at;

  void validate(const GridSpec& grid) const;
  bool is_zero() const;
  bool time_dependent() const { return kind == FlowKind::kCustom && static_cast<bool>(stream_at); }
  ScalarField stream_function(const GridSpec& grid, double t = 0.0) const;
};

/// Returns (-d_y H, d_x H).
VectorField velocity_from_stream(const ScalarField& stream);
VectorField flow_velocity(const FlowSpec& flow, const GridSpec& grid, double t = 0.0);

/// chi * div(dealias(rho) * grad(lap^{-1} rho)), with the flux dealiased before the divergence.
ScalarField chemo_term(const ScalarField& rho, double chi);

/// -eps * rho^q. Integer q <= 3 is dealiased; non-integer q clamps negatives to zero first.
/// Throws InvalidStateError when rho has values below -tolerance.
ScalarField reaction_term(const ScalarField& rho, double epsilon, double q, double tolerance = 1e-6);

/// -div(u * dealias(rho)), conservative form, flux dealiased.
ScalarField advection_term(const ScalarField& rho, const VectorField& velocity);

struct Tendency {
  ScalarField value;
  bool includes_diffusion = false;
};

Tendency assemble_rhs(const ScalarField& rho, const ModelParams& params, const FlowSpec& flow,
                      bool include_diffusion, double t = 0.0, double tolerance = 1e-6);

/// Side products of one right-hand-side evaluation, reused for step-size control.
struct StageInfo {
  /// max over the grid of |u| + chi |grad lap^{-1} rho|
  double max_transport_speed = 0.0;
  double max_density = 0.0;
};

/// Fourier-space evaluator of the non-diffusive tendency, fusing advection and
/// chemotaxis into one flux so each stage costs as few transforms as possible.
class RhsEvaluator {
 public:
  RhsEvaluator(GridSpec grid, ModelParams params, FlowSpec flow, double negativity_tolerance);

  /// Tendency spectrum at state `rho_hat` (physical samples `rho`) and time t.
  Spectrum nonlinear(const Spectrum& rho_hat, const ScalarField& rho, double t, StageInfo* info = nullptr) const;

  /// Transport speed and peak density of `rho` without assembling the tendency.
  StageInfo stage_info(const Spectrum& rho_hat, const ScalarField& rho, double t) const;

  const ModelParams& params() const { return params_; }
  const GridSpec& grid() const { return grid_; }
  void set_negativity_tolerance(double tolerance) { tolerance_ = tolerance; }

 private:
  const VectorField* velocity_at(double t, VectorField& scratch) const;

  GridSpec grid_;
  ModelParams params_;
  FlowSpec flow_;
  double tolerance_;
  std::optional<VectorField> steady_velocity_;
};

}  // namespace chemoreact
