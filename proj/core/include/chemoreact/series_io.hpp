#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "chemoreact/diagnostics.hpp"
#include "chemoreact/grid.hpp"

namespace chemoreact {

inline constexpr const char* kSeriesHeader = "t,m0,m2,l2sq,linf,hs,min_val,area,balance_residual,validity_flag";

/// Full-precision CSV rows; the output is a pure function of the records.
std::string format_series_csv(const TimeSeries& series);
void write_series_csv(const std::filesystem::path& path, const TimeSeries& series);

/// Reads records only; metadata.all_valid and first_invalid_t are rebuilt from the flags.
TimeSeries parse_series_csv(std::istream& in);
TimeSeries read_series_csv(const std::filesystem::path& path);

/// Snapshot layout: 4-byte magic "CRSF", uint32 n, float64 L, then n*n float64 values in
/// row-major order (x index outer). All fields are little-endian.
inline constexpr char kSnapshotMagic[4] = {'C', 'R', 'S', 'F'};
inline constexpr std::size_t kSnapshotHeaderBytes = 16;

void write_snapshot(const std::filesystem::path& path, const ScalarField& field);
ScalarField read_snapshot(const std::filesystem::path& path);

/// n lines of n comma-separated samples; line ix holds rho(x_ix, y_0 .. y_{n-1}).
ScalarField read_field_csv(const std::filesystem::path& path, const GridSpec& grid);
void write_field_csv(const std::filesystem::path& path, const ScalarField& field);

}  // namespace chemoreact
