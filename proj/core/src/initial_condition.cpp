#include <cmath>
#include <numbers>
#include <random>

#include "chemoreact/error.hpp"
#include "chemoreact/run_config.hpp"

namespace chemoreact {
namespace {

double wrap(double d, double L) {
  d = std::fmod(d, L);
  if (d < -0.5 * L) d += L;
  if (d >= 0.5 * L) d -= L;
  return d;
}

double torus_distance_squared(double x, double y, const std::array<double, 2>& c, double L) {
  const double dx = wrap(x - c[0], L);
  const double dy = wrap(y - c[1], L);
  return dx * dx + dy * dy;
}

ScalarField gaussian_bump(const GridSpec& grid, const std::array<double, 2>& center, double sigma) {
  const double inv = 1.0 / (2.0 * sigma * sigma);
  return ScalarField::sample(grid, [&](double x, double y) {
    return std::exp(-torus_distance_squared(x, y, center, grid.L) * inv);
  });
}

void rescale_to_mass(ScalarField& rho, double target) {
  const double current = rho.integral();
  if (!(current > 0.0)) throw ConfigError("initial condition has no positive mass");
  rho *= target / current;
}

}  // namespace

std::string to_string(IcKind kind) {
  switch (kind) {
    case IcKind::kGaussian: return "gaussian";
    case IcKind::kTwoGaussians: return "two_gaussians";
    case IcKind::kPlateau: return "plateau";
    case IcKind::kCustomCsv: return "custom_csv";
  }
  return "gaussian";
}

IcKind parse_ic_kind(const std::string& text) {
  if (text == "gaussian") return IcKind::kGaussian;
  if (text == "two_gaussians") return IcKind::kTwoGaussians;
  if (text == "plateau") return IcKind::kPlateau;
  if (text == "custom_csv") return IcKind::kCustomCsv;
  throw ConfigError("unknown initial condition kind '" + text + "'");
}

void InitialCondition::validate(const GridSpec& grid) const {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw ConfigError("ic.mass must be positive");
  if (kind != IcKind::kCustomCsv && !(width > 0.0)) throw ConfigError("ic.width must be positive");
  if (edge < 0.0) throw ConfigError("ic.edge must be >= 0");
  if (kind == IcKind::kCustomCsv) {
    if (!custom) throw ConfigError("ic.kind = custom_csv requires a loaded field");
    if (!(custom->grid() == grid)) throw ConfigError("custom initial field does not match the grid");
    if (custom->min() < 0.0) throw ConfigError("custom initial field must be non-negative");
  }
  if (kind == IcKind::kTwoGaussians && !centers.empty() && centers.size() != 2) {
    throw ConfigError("ic.centers for two_gaussians needs exactly two points");
  }
}

ScalarField make_initial_condition(const InitialCondition& ic, const GridSpec& grid) {
  ic.validate(grid);
  const std::array<double, 2> middle{0.5 * grid.L, 0.5 * grid.L};
  ScalarField rho(grid);
  switch (ic.kind) {
    case IcKind::kGaussian:
      rho = gaussian_bump(grid, ic.centers.empty() ? middle : ic.centers.front(), ic.width);
      break;
    case IcKind::kTwoGaussians: {
      std::vector<std::array<double, 2>> centers = ic.centers;
      if (centers.empty()) {
        std::mt19937_64 engine(ic.seed);
        std::uniform_real_distribution<double> place(0.25 * grid.L, 0.75 * grid.L);
        for (int i = 0; i < 2; ++i) centers.push_back({place(engine), place(engine)});
      }
      rho = gaussian_bump(grid, centers[0], ic.width);
      rho += gaussian_bump(grid, centers[1], ic.width);
      break;
    }
    case IcKind::kPlateau: {
      const auto center = ic.centers.empty() ? middle : ic.centers.front();
      const double edge = ic.edge > 0.0 ? ic.edge : 2.0 * grid.spacing();
      rho = ScalarField::sample(grid, [&](double x, double y) {
        const double r = std::sqrt(torus_distance_squared(x, y, center, grid.L));
        return 0.5 * (1.0 - std::tanh((r - ic.width) / edge));
      });
      break;
    }
    case IcKind::kCustomCsv:
      rho = *ic.custom;
      break;
  }
  rescale_to_mass(rho, ic.mass);
  return rho;
}

std::string to_string(OutputSpacing spacing) { return spacing == OutputSpacing::kGeometric ? "geometric" : "linear"; }

std::string to_string(SnapshotMode mode) {
  switch (mode) {
    case SnapshotMode::kNone: return "none";
    case SnapshotMode::kFinal: return "final";
    case SnapshotMode::kAll: return "all";
  }
  return "none";
}

void OutputConfig::validate() const {
  if (spacing == OutputSpacing::kLinear && !(interval > 0.0)) throw ConfigError("output.interval must be positive");
  if (spacing == OutputSpacing::kGeometric) {
    if (!(first > 0.0)) throw ConfigError("output.first must be positive");
    if (per_decade < 1) throw ConfigError("output.per_decade must be >= 1");
  }
  if (!(sobolev_order >= 0.0)) throw ConfigError("output.hs_order must be >= 0");
}

bool is_filesystem_safe(const std::string& label) {
  if (label.empty() || label == "." || label == "..") return false;
  for (char c : label) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
                    c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

void RunConfig::validate() const {
  if (!is_filesystem_safe(label)) throw ConfigError("label must be nonempty and use only [A-Za-z0-9._-]");
  grid.validate();
  model.validate();
  flow.validate(grid);
  ic.validate(grid);
  stepper.validate();
  output.validate();
}

std::vector<double> output_times(const OutputConfig& output, double t_end) {
  std::vector<double> times;
  if (t_end <= 0.0) return times;
  if (output.spacing == OutputSpacing::kLinear) {
    for (long k = 1;; ++k) {
      const double t = k * output.interval;
      if (t >= t_end * (1.0 - 1e-12)) break;
      times.push_back(t);
    }
  } else {
    for (long k = 0;; ++k) {
      const double t = output.first * std::pow(10.0, static_cast<double>(k) / output.per_decade);
      if (t >= t_end * (1.0 - 1e-12)) break;
      times.push_back(t);
    }
  }
  times.push_back(t_end);
  return times;
}

}  // namespace chemoreact
