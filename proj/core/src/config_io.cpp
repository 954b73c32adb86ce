#include "chemoreact/config_io.hpp"

#include <fmt/format.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "chemoreact/error.hpp"
#include "chemoreact/series_io.hpp"

namespace chemoreact {
namespace {

namespace pt = boost::property_tree;
namespace fs = std::filesystem;

const std::map<std::string, std::set<std::string>> kKeys = {
    {"grid", {"n", "L"}},
    {"model", {"chi", "epsilon", "q"}},
    {"flow", {"kind", "amplitude", "wavenumber", "file"}},
    {"ic", {"kind", "mass", "width", "centers", "seed", "edge", "file"}},
    {"stepper", {"t_end", "cfl", "dt_max", "tol_pos", "scheme"}},
    {"output", {"spacing", "interval", "first", "per_decade", "snapshots", "sobolev_order"}},
    {"sweep", {"epsilon", "chi", "amplitude", "parallelism", "cap"}},
};

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

pt::ptree parse_ini(const std::string& text) {
  std::istringstream in(text);
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax error: ") + e.what());
  }
  return tree;
}

void check_keys(const pt::ptree& tree, bool allow_sweep) {
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      if (name != "label") throw ConfigError("unknown top-level key '" + name + "'");
      continue;
    }
    if (name == "sweep" && !allow_sweep) throw ConfigError("[sweep] section is only valid in sweep configs");
    const auto section = kKeys.find(name);
    if (section == kKeys.end()) throw ConfigError("unknown section [" + name + "]");
    for (const auto& [key, value] : node) {
      if (!section->second.contains(key)) throw ConfigError("unknown key '" + key + "' in [" + name + "]");
    }
  }
}

template <typename T>
T parse_value(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  T value{};
  in >> value;
  if (in.fail() || !(in >> std::ws).eof()) throw ConfigError("cannot parse " + key + " = '" + text + "'");
  return value;
}

template <typename T>
void read(const pt::ptree& tree, const std::string& key, T& target) {
  if (const auto node = tree.get_child_optional(pt::ptree::path_type(key, '.'))) {
    target = parse_value<T>(key, node->data());
  }
}

void read_string(const pt::ptree& tree, const std::string& key, std::string& target) {
  if (const auto node = tree.get_child_optional(key)) target = node->data();
}

std::vector<std::string> split(const std::string& text, char delim) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, delim)) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = item.find_last_not_of(" \t");
    out.push_back(item.substr(first, last - first + 1));
  }
  return out;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_value<double>(key, item));
  if (out.empty()) throw ConfigError(key + " must list at least one value");
  return out;
}

std::vector<std::array<double, 2>> parse_centers(const std::string& text) {
  std::vector<std::array<double, 2>> out;
  for (const auto& pair : split(text, ';')) {
    const auto coords = parse_list("ic.centers", pair);
    if (coords.size() != 2) throw ConfigError("ic.centers entries must be 'x, y' pairs separated by ';'");
    out.push_back({coords[0], coords[1]});
  }
  return out;
}

OutputSpacing parse_spacing(const std::string& text) {
  if (text == "linear") return OutputSpacing::kLinear;
  if (text == "geometric") return OutputSpacing::kGeometric;
  throw ConfigError("unknown output.spacing '" + text + "' (expected linear or geometric)");
}

SnapshotMode parse_snapshots(const std::string& text) {
  if (text == "none") return SnapshotMode::kNone;
  if (text == "final") return SnapshotMode::kFinal;
  if (text == "all") return SnapshotMode::kAll;
  throw ConfigError("unknown output.snapshots '" + text + "' (expected none, final or all)");
}

fs::path resolve(const fs::path& base_dir, const std::string& file) {
  const fs::path p(file);
  return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
}

RunConfig build_run_config(const pt::ptree& tree, const fs::path& base_dir) {
  RunConfig c;
  read_string(tree, "label", c.label);

  read(tree, "grid.n", c.grid.n);
  read(tree, "grid.L", c.grid.L);
  // The remaining sections depend on a valid grid (custom fields, wavenumber bounds).
  c.grid.validate();

  read(tree, "model.chi", c.model.chi);
  read(tree, "model.epsilon", c.model.epsilon);
  read(tree, "model.q", c.model.q);

  if (const auto kind = tree.get_optional<std::string>("flow.kind")) c.flow.kind = parse_flow_kind(*kind);
  read(tree, "flow.amplitude", c.flow.amplitude);
  read(tree, "flow.wavenumber", c.flow.wavenumber);
  read_string(tree, "flow.file", c.flow.file);
  if (c.flow.kind == FlowKind::kCustom) {
    if (c.flow.file.empty()) throw ConfigError("flow.kind = custom requires flow.file");
    c.flow.custom_stream = read_field_csv(resolve(base_dir, c.flow.file), c.grid);
  }

  if (const auto kind = tree.get_optional<std::string>("ic.kind")) c.ic.kind = parse_ic_kind(*kind);
  read(tree, "ic.mass", c.ic.mass);
  read(tree, "ic.width", c.ic.width);
  read(tree, "ic.seed", c.ic.seed);
  read(tree, "ic.edge", c.ic.edge);
  if (const auto centers = tree.get_optional<std::string>("ic.centers")) c.ic.centers = parse_centers(*centers);
  read_string(tree, "ic.file", c.ic.file);
  if (c.ic.kind == IcKind::kCustomCsv) {
    if (c.ic.file.empty()) throw ConfigError("ic.kind = custom_csv requires ic.file");
    c.ic.custom = read_field_csv(resolve(base_dir, c.ic.file), c.grid);
  }

  read(tree, "stepper.t_end", c.stepper.t_end);
  read(tree, "stepper.cfl", c.stepper.cfl);
  read(tree, "stepper.dt_max", c.stepper.dt_max);
  read(tree, "stepper.tol_pos", c.stepper.tol_pos);
  if (const auto scheme = tree.get_optional<std::string>("stepper.scheme")) c.stepper.scheme = parse_scheme(*scheme);

  if (const auto spacing = tree.get_optional<std::string>("output.spacing")) c.output.spacing = parse_spacing(*spacing);
  read(tree, "output.interval", c.output.interval);
  read(tree, "output.first", c.output.first);
  read(tree, "output.per_decade", c.output.per_decade);
  read(tree, "output.sobolev_order", c.output.sobolev_order);
  if (const auto snaps = tree.get_optional<std::string>("output.snapshots")) c.output.snapshots = parse_snapshots(*snaps);

  c.validate();
  return c;
}

std::string axis_tag(const char* name, double value) { return fmt::format("_{}{}", name, value); }

}  // namespace

RunConfig parse_run_config(const std::string& text, const fs::path& base_dir) {
  const pt::ptree tree = parse_ini(text);
  check_keys(tree, false);
  return build_run_config(tree, base_dir);
}

RunConfig load_run_config(const fs::path& path) {
  return parse_run_config(read_file(path), path.parent_path());
}

SweepConfig parse_sweep_config(const std::string& text, const fs::path& base_dir) {
  const pt::ptree tree = parse_ini(text);
  check_keys(tree, true);
  SweepConfig s;
  s.base = build_run_config(tree, base_dir);
  if (const auto v = tree.get_optional<std::string>("sweep.epsilon")) s.epsilon = parse_list("sweep.epsilon", *v);
  if (const auto v = tree.get_optional<std::string>("sweep.chi")) s.chi = parse_list("sweep.chi", *v);
  if (const auto v = tree.get_optional<std::string>("sweep.amplitude")) s.amplitude = parse_list("sweep.amplitude", *v);
  read(tree, "sweep.parallelism", s.parallelism);
  read(tree, "sweep.cap", s.cap);
  s.validate();
  return s;
}

SweepConfig load_sweep_config(const fs::path& path) {
  return parse_sweep_config(read_file(path), path.parent_path());
}

void SweepConfig::validate() const {
  base.validate();
  if (epsilon.empty() && chi.empty() && amplitude.empty()) {
    throw ConfigError("[sweep] needs at least one nonempty axis (epsilon, chi or amplitude)");
  }
  if (parallelism < 1) throw ConfigError("sweep.parallelism must be >= 1");
  const std::size_t size = std::max<std::size_t>(epsilon.size(), 1) * std::max<std::size_t>(chi.size(), 1) *
                           std::max<std::size_t>(amplitude.size(), 1);
  if (size > cap) throw ConfigError(fmt::format("sweep has {} runs, above the cap of {}", size, cap));
  for (const auto& run : expand()) run.validate();
}

std::vector<RunConfig> SweepConfig::expand() const {
  const std::vector<double> eps_axis = epsilon.empty() ? std::vector<double>{base.model.epsilon} : epsilon;
  const std::vector<double> chi_axis = chi.empty() ? std::vector<double>{base.model.chi} : chi;
  const std::vector<double> amp_axis = amplitude.empty() ? std::vector<double>{base.flow.amplitude} : amplitude;
  std::vector<RunConfig> runs;
  for (double e : eps_axis) {
    for (double x : chi_axis) {
      for (double a : amp_axis) {
        RunConfig run = base;
        run.model.epsilon = e;
        run.model.chi = x;
        run.flow.amplitude = a;
        if (!epsilon.empty()) run.label += axis_tag("eps", e);
        if (!chi.empty()) run.label += axis_tag("chi", x);
        if (!amplitude.empty()) run.label += axis_tag("A", a);
        runs.push_back(std::move(run));
      }
    }
  }
  return runs;
}

std::string format_run_config(const RunConfig& c) {
  std::string out = fmt::format("label = {}\n\n", c.label);
  out += fmt::format("[grid]\nn = {}\nL = {}\n\n", c.grid.n, c.grid.L);
  out += fmt::format("[model]\nchi = {}\nepsilon = {}\nq = {}\n\n", c.model.chi, c.model.epsilon, c.model.q);
  out += fmt::format("[flow]\nkind = {}\namplitude = {}\nwavenumber = {}\n", to_string(c.flow.kind), c.flow.amplitude,
                     c.flow.wavenumber);
  if (!c.flow.file.empty()) out += fmt::format("file = {}\n", c.flow.file);
  out += fmt::format("\n[ic]\nkind = {}\nmass = {}\nwidth = {}\nseed = {}\nedge = {}\n", to_string(c.ic.kind), c.ic.mass,
                     c.ic.width, c.ic.seed, c.ic.edge);
  if (!c.ic.centers.empty()) {
    std::string centers;
    for (const auto& p : c.ic.centers) centers += fmt::format("{}{}, {}", centers.empty() ? "" : "; ", p[0], p[1]);
    out += fmt::format("centers = {}\n", centers);
  }
  if (!c.ic.file.empty()) out += fmt::format("file = {}\n", c.ic.file);
  out += fmt::format("\n[stepper]\nt_end = {}\ncfl = {}\ndt_max = {}\ntol_pos = {}\nscheme = {}\n\n", c.stepper.t_end,
                     c.stepper.cfl, c.stepper.dt_max, c.stepper.tol_pos, to_string(c.stepper.scheme));
  out += fmt::format(
      "[output]\nspacing = {}\ninterval = {}\nfirst = {}\nper_decade = {}\nsnapshots = {}\nsobolev_order = {}\n",
      to_string(c.output.spacing), c.output.interval, c.output.first, c.output.per_decade,
      to_string(c.output.snapshots), c.output.sobolev_order);
  return out;
}

}  // namespace chemoreact
