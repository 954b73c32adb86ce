#include "chemoreact/series_io.hpp"

#include <fmt/format.h>

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "chemoreact/error.hpp"

namespace chemoreact {
namespace {

namespace fs = std::filesystem;

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes a little-endian host");

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  return out;
}

double parse_double(const std::string& cell, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(cell, &used);
    if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    // stod rejects "nan"/"inf" spelled by some writers only on odd platforms; report the cell verbatim.
    throw InsufficientDataError(fmt::format("line {}: cannot parse '{}' as a number", line_no, cell));
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

}  // namespace

std::string format_series_csv(const TimeSeries& series) {
  std::string out = kSeriesHeader;
  out += '\n';
  for (const auto& r : series.records) {
    out += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{}\n", r.t, r.m0, r.m2,
                       r.l2sq, r.linf, r.hs, r.min_val, r.area, r.balance_residual, r.valid ? 1 : 0);
  }
  return out;
}

void write_series_csv(const fs::path& path, const TimeSeries& series) { write_text(path, format_series_csv(series)); }

TimeSeries parse_series_csv(std::istream& in) {
  TimeSeries series;
  std::string line;
  if (!std::getline(in, line)) throw InsufficientDataError("series CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSeriesHeader) throw InsufficientDataError("series CSV header mismatch: '" + line + "'");
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 10) throw InsufficientDataError(fmt::format("line {}: expected 10 columns", line_no));
    DiagnosticsRecord r;
    r.t = parse_double(cells[0], line_no);
    r.m0 = parse_double(cells[1], line_no);
    r.m2 = parse_double(cells[2], line_no);
    r.l2sq = parse_double(cells[3], line_no);
    r.linf = parse_double(cells[4], line_no);
    r.hs = parse_double(cells[5], line_no);
    r.min_val = parse_double(cells[6], line_no);
    r.area = parse_double(cells[7], line_no);
    r.balance_residual = parse_double(cells[8], line_no);
    r.valid = parse_double(cells[9], line_no) != 0.0;
    if (!series.records.empty() && !(r.t > series.records.back().t)) {
      throw InsufficientDataError(fmt::format("line {}: times must be strictly increasing", line_no));
    }
    if (!r.valid && series.metadata.all_valid) {
      series.metadata.all_valid = false;
      series.metadata.first_invalid_t = r.t;
    }
    series.records.push_back(r);
  }
  return series;
}

TimeSeries read_series_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InsufficientDataError("cannot open series '" + path.string() + "'");
  return parse_series_csv(in);
}

void write_snapshot(const fs::path& path, const ScalarField& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write snapshot '" + path.string() + "'");
  const auto n = static_cast<std::uint32_t>(field.grid().n);
  const double L = field.grid().L;
  out.write(kSnapshotMagic, 4);
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(&L), sizeof L);
  out.write(reinterpret_cast<const char*>(field.values().data()),
            static_cast<std::streamsize>(field.values().size() * sizeof(double)));
  if (!out) throw Error("snapshot write failed for '" + path.string() + "'");
}

ScalarField read_snapshot(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open snapshot '" + path.string() + "'");
  char magic[4];
  std::uint32_t n = 0;
  double L = 0.0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  in.read(reinterpret_cast<char*>(&L), sizeof L);
  if (!in || std::memcmp(magic, kSnapshotMagic, 4) != 0) throw Error("'" + path.string() + "' is not a snapshot");
  GridSpec grid{static_cast<int>(n), L};
  grid.validate();
  ScalarField field(grid);
  in.read(reinterpret_cast<char*>(field.values().data()),
          static_cast<std::streamsize>(field.values().size() * sizeof(double)));
  if (!in) throw Error("snapshot '" + path.string() + "' is truncated");
  return field;
}

ScalarField read_field_csv(const fs::path& path, const GridSpec& grid) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open field file '" + path.string() + "'");
  ScalarField field(grid);
  std::string line;
  int ix = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (ix >= grid.n) throw ConfigError(fmt::format("'{}' has more than {} rows", path.string(), grid.n));
    const auto cells = split_csv(line);
    if (static_cast<int>(cells.size()) != grid.n) {
      throw ConfigError(fmt::format("'{}' row {} has {} values, expected {}", path.string(), ix, cells.size(), grid.n));
    }
    for (int iy = 0; iy < grid.n; ++iy) {
      try {
        field(ix, iy) = parse_double(cells[iy], static_cast<std::size_t>(ix + 1));
      } catch (const InsufficientDataError& e) {
        throw ConfigError(path.string() + ": " + e.what());
      }
    }
    ++ix;
  }
  if (ix != grid.n) throw ConfigError(fmt::format("'{}' has {} rows, expected {}", path.string(), ix, grid.n));
  if (!field.all_finite()) throw ConfigError("'" + path.string() + "' contains non-finite values");
  return field;
}

void write_field_csv(const fs::path& path, const ScalarField& field) {
  const int n = field.grid().n;
  std::string out;
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) out += (iy == 0 ? "" : ",") + fmt::format("{:.17g}", field(ix, iy));
    out += '\n';
  }
  write_text(path, out);
}

}  // namespace chemoreact
