#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "chemoreact/run_config.hpp"

namespace chemoreact {

inline constexpr std::size_t kDefaultSweepCap = 64;

struct SweepConfig {
  RunConfig base;
  std::vector<double> epsilon;
  std::vector<double> chi;
  std::vector<double> amplitude;
  /// Maximum concurrent runs; the CLI --threads flag overrides it.
  int parallelism = 1;
  std::size_t cap = kDefaultSweepCap;

  void validate() const;
  /// Cartesian product over the axes in (epsilon, chi, amplitude) order with derived labels.
  std::vector<RunConfig> expand() const;
};

/// Parses the INI run format. Relative paths inside the file resolve against base_dir.
RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

SweepConfig parse_sweep_config(const std::string& text, const std::filesystem::path& base_dir = {});
SweepConfig load_sweep_config(const std::filesystem::path& path);

/// Writes a config back in the INI format; parse_run_config(format_run_config(c)) reproduces c
/// except for custom fields, which are referenced by their source path.
std::string format_run_config(const RunConfig& config);

}  // namespace chemoreact
