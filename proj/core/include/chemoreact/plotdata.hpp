#pragma once

#include <filesystem>
#include <span>
#include <vector>

namespace chemoreact {

/// Writes plot-ready TSV files into `out_dir` (defaults to `source`).
/// A run directory yields m0_vs_t.tsv, inv_m0_vs_logt.tsv, logm0_vs_logt.tsv and overlay.tsv;
/// a sweep directory additionally yields comparison.tsv. Returns the files written.
std::vector<std::filesystem::path> emit_plotdata(const std::filesystem::path& source,
                                                 const std::filesystem::path& out_dir = {});

/// Linear interpolation of y in log t; NaN outside [t.front(), t.back()] or for t <= 0.
double interpolate_log_time(std::span<const double> t, std::span<const double> y, double at);

}  // namespace chemoreact
