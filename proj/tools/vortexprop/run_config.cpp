#include "run_config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace vortexprop::cli {

Family parse_family(const std::string& text) {
  if (text == "tmsv") return Family::tmsv;
  if (text == "ps_vortex") return Family::ps_vortex;
  if (text == "bs_vortex") return Family::bs_vortex;
  throw ConfigError("unknown family '" + text + "' (expected tmsv, ps_vortex or bs_vortex)");
}

std::string to_string(Family family) {
  switch (family) {
    case Family::tmsv: return "tmsv";
    case Family::ps_vortex: return "ps_vortex";
    case Family::bs_vortex: return "bs_vortex";
  }
  return "?";
}

WaveguideParams RunConfig::waveguide() const {
  if (time_t && kappa) throw ConfigError("give exactly one of --time / --kappa, not both");
  if (time_t) return WaveguideParams::from_time(coupling_c, *time_t);
  return WaveguideParams::from_kappa(kappa.value_or(0.0), coupling_c);
}

AxisRange RunConfig::parse_axis(const std::string& text) const {
  AxisRange range;
  char c1 = 0, c2 = 0;
  std::istringstream in(text);
  if (!(in >> range.min >> c1 >> range.max >> c2 >> range.count) || c1 != ':' || c2 != ':')
    throw ConfigError("bad grid spec '" + text + "' (expected min:max:count)");
  range.validate();
  return range;
}

SliceSpec RunConfig::slice_spec() const {
  const auto comma = slice.find(',');
  if (comma == std::string::npos)
    throw ConfigError("bad slice spec '" + slice + "' (expected two axis labels, e.g. x,y)");
  SliceSpec spec;
  spec.varying_u = parse_axis_label(slice.substr(0, comma));
  spec.varying_v = parse_axis_label(slice.substr(comma + 1));
  if (spec.varying_u == spec.varying_v)
    throw ConfigError("slice spec repeats axis label '" + to_string(spec.varying_u) + "'");

  // Pins: "label=value,label=value". Unmentioned remaining axes pin to 0.
  bool assigned[4] = {false, false, false, false};
  assigned[int(spec.varying_u)] = true;
  assigned[int(spec.varying_v)] = true;
  size_t slot = 0;
  std::istringstream in(pins);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("bad pin '" + item + "' (expected label=value)");
    const AxisLabel label = parse_axis_label(item.substr(0, eq));
    const double value = std::stod(item.substr(eq + 1));
    if (assigned[int(label)])
      throw ConfigError("axis '" + to_string(label) + "' pinned but already in use");
    if (slot >= spec.pinned.size()) throw ConfigError("too many pinned axes");
    spec.pinned[slot++] = {label, value};
    assigned[int(label)] = true;
  }
  for (int l = 0; l < 4; ++l)
    if (!assigned[l]) {
      if (slot >= spec.pinned.size()) throw ConfigError("too many pinned axes");
      spec.pinned[slot++] = {AxisLabel(l), 0.0};
      assigned[l] = true;
    }
  spec.validate();
  return spec;
}

Grid2D RunConfig::grid(const SliceSpec& spec) const {
  Grid2D grid;
  grid.axis_u = parse_axis(grid_u);
  grid.axis_v = parse_axis(grid_v);
  grid.label_u = spec.varying_u;
  grid.label_v = spec.varying_v;
  grid.validate();
  return grid;
}

FamilySpec RunConfig::family_spec() const {
  if (family == Family::bs_vortex) return BsVortexParams{r_x, r_y, eta_x, eta_y, k, phi};
  return PsVortexSpec{SqueezeParams{r, phi}, family == Family::tmsv ? 0 : k};
}

void RunConfig::validate() const {
  if (format != "csv" && format != "json")
    throw ConfigError("unknown format '" + format + "' (expected csv or json)");
  if (method != "schmidt" && method != "eigensolve" && method != "both")
    throw ConfigError("unknown method '" + method + "'");
  if (kappa_count < 1) throw ConfigError("kappa count must be >= 1");
  if (!(kappa_min >= 0.0) || !(kappa_max >= kappa_min))
    throw ConfigError("need 0 <= kappa_min <= kappa_max");
  if (n_max == 0 || n_max < -1) throw ConfigError("n_max must be positive (or -1 for adaptive)");
  if (!(tail_tolerance >= 0.0 && tail_tolerance < 1.0))
    throw ConfigError("tail tolerance must lie in [0, 1)");
  if (cutoff_cap < 16) throw ConfigError("cutoff cap must be >= 16");
}

void load_config_file(const std::string& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad config file " + path + ": " + e.what());
  }

  auto get = [&](const char* key, auto& target) {
    if (doc.contains(key)) doc.at(key).get_to(target);
  };
  if (doc.contains("family")) config.family = parse_family(doc.at("family").get<std::string>());
  get("r", config.r);
  get("phi", config.phi);
  get("k", config.k);
  get("rx", config.r_x);
  get("ry", config.r_y);
  get("etax", config.eta_x);
  get("etay", config.eta_y);
  get("coupling", config.coupling_c);
  if (doc.contains("time")) config.time_t = doc.at("time").get<double>();
  if (doc.contains("kappa")) config.kappa = doc.at("kappa").get<double>();
  get("kappa_min", config.kappa_min);
  get("kappa_max", config.kappa_max);
  get("kappa_count", config.kappa_count);
  get("method", config.method);
  get("nmax", config.n_max);
  get("tail_tol", config.tail_tolerance);
  get("cutoff_cap", config.cutoff_cap);
  get("threads", config.threads);
  get("ugrid", config.grid_u);
  get("vgrid", config.grid_v);
  get("slice", config.slice);
  get("pin", config.pins);
  get("out", config.out_dir);
  get("format", config.format);
}

}  // namespace vortexprop::cli
