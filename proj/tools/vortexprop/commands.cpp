#include "commands.hpp"

#include <cmath>
#include <numbers>

#include "io.hpp"

namespace vortexprop::cli {

namespace {

constexpr const char* kFrameNote = "co-rotating frame; the free mode rotation is omitted";

TwoModeState build_state(const RunConfig& config, const WaveguideParams& wg) {
  if (config.family == Family::bs_vortex) {
    const BsVortexParams params{config.r_x, config.r_y, config.eta_x, config.eta_y, config.k,
                                config.phi};
    if (config.n_max > 0)
      return evolved_bs_vortex(params, wg, FockCutoff{config.n_max, config.tail_tolerance});
    return evolved_bs_vortex(params, wg, AdaptiveCutoff{config.tail_tolerance, config.cutoff_cap});
  }
  const SqueezeParams params{config.r, config.phi};
  const int k = config.family == Family::tmsv ? 0 : config.k;
  if (config.n_max > 0)
    return evolved_ps_vortex(params, k, wg, FockCutoff{config.n_max, config.tail_tolerance});
  return evolved_ps_vortex(params, k, wg, AdaptiveCutoff{config.tail_tolerance, config.cutoff_cap});
}

HeaderMap base_header(const RunConfig& config, const WaveguideParams& wg) {
  HeaderMap header;
  header.emplace_back("command", config.command);
  header.emplace_back("family", to_string(config.family));
  if (config.family == Family::bs_vortex) {
    header.emplace_back("r_x", format_double(config.r_x));
    header.emplace_back("r_y", format_double(config.r_y));
    header.emplace_back("eta_x", format_double(config.eta_x));
    header.emplace_back("eta_y", format_double(config.eta_y));
    header.emplace_back("k", std::to_string(config.k));
  } else {
    header.emplace_back("r", format_double(config.r));
    if (config.family == Family::ps_vortex) header.emplace_back("k", std::to_string(config.k));
  }
  header.emplace_back("phi", format_double(config.phi));
  header.emplace_back("coupling_c", format_double(wg.coupling_c));
  header.emplace_back("time_t", format_double(wg.time_t));
  header.emplace_back("kappa", format_double(wg.kappa));
  header.emplace_back("tail_tolerance", format_double(config.tail_tolerance));
  header.emplace_back("cutoff_cap", std::to_string(config.cutoff_cap));
  header.emplace_back("threads", std::to_string(config.threads));
  header.emplace_back("frame", kFrameNote);
  return header;
}

void add_state_header(HeaderMap& header, const TwoModeState& state) {
  header.emplace_back("n_max", std::to_string(state.n_max()));
  header.emplace_back("tail_estimate", format_double(state.tail_estimate()));
}

Eigen::VectorXd axis_values(const AxisRange& axis) {
  Eigen::VectorXd values(axis.count);
  for (int i = 0; i < axis.count; ++i) values(i) = axis.value(i);
  return values;
}

void write_grid(const RunConfig& config, const std::filesystem::path& path,
                const HeaderMap& header, const std::string& u_name, const std::string& v_name,
                const std::string& value_name, const Grid2D& grid,
                const Eigen::MatrixXd& values) {
  if (config.format == "json")
    write_grid_json(path, header, u_name, v_name, value_name, axis_values(grid.axis_u),
                    axis_values(grid.axis_v), values);
  else
    write_grid_csv(path, header, u_name, v_name, value_name, axis_values(grid.axis_u),
                   axis_values(grid.axis_v), values);
}

std::string data_extension(const RunConfig& config) {
  return config.format == "json" ? ".json" : ".csv";
}

struct StateOutputs {
  std::vector<std::string> files;
  int n_max = 0;
};

StateOutputs emit_state(const RunConfig& config, const std::filesystem::path& dir,
                        const std::string& stem) {
  const WaveguideParams wg = config.waveguide();
  const TwoModeState state = build_state(config, wg);

  SliceSpec spec;  // (x, y) with zero pins; only used to shape the grid
  const Grid2D grid = config.grid(spec);
  const QuadratureField field = quadrature_wavefunction(state, grid);

  HeaderMap header = base_header(config, wg);
  add_state_header(header, state);
  header.emplace_back("grid_u", config.grid_u);
  header.emplace_back("grid_v", config.grid_v);

  StateOutputs outputs;
  outputs.n_max = state.n_max();
  const std::string ext = data_extension(config);

  HeaderMap contour_header = header;
  contour_header.emplace_back("quantity", "|Psi|^2");
  const std::filesystem::path contour_path = dir / (stem + "_contour" + ext);
  write_grid(config, contour_path, contour_header, "x", "y", "abs2",
             grid, field.values.cwiseAbs2());
  outputs.files.push_back(contour_path.string());

  HeaderMap phase_header = header;
  phase_header.emplace_back("quantity", "arg Psi in (-pi, pi]");
  Eigen::MatrixXd phase(field.values.rows(), field.values.cols());
  for (int i = 0; i < phase.rows(); ++i)
    for (int j = 0; j < phase.cols(); ++j) phase(i, j) = std::arg(field.values(i, j));
  const std::filesystem::path phase_path = dir / (stem + "_phase" + ext);
  write_grid(config, phase_path, phase_header, "x", "y", "phase", grid, phase);
  outputs.files.push_back(phase_path.string());
  return outputs;
}

StateOutputs emit_wigner(const RunConfig& config, const std::filesystem::path& dir,
                         const std::string& stem) {
  const WaveguideParams wg = config.waveguide();
  const TwoModeState state = build_state(config, wg);
  const SliceSpec spec = config.slice_spec();
  const Grid2D grid = config.grid(spec);
  const WignerSlice slice = wigner_slice(state, spec, grid, config.threads);

  HeaderMap header = base_header(config, wg);
  add_state_header(header, state);
  header.emplace_back("grid_u", config.grid_u);
  header.emplace_back("grid_v", config.grid_v);
  header.emplace_back("slice", to_string(spec.varying_u) + "," + to_string(spec.varying_v));
  for (const auto& [label, value] : spec.pinned)
    header.emplace_back("pin_" + to_string(label), format_double(value));
  header.emplace_back("method", "displaced_parity_kernel");
  header.emplace_back("quantity", "W");

  StateOutputs outputs;
  outputs.n_max = state.n_max();
  const std::filesystem::path path = dir / (stem + data_extension(config));
  write_grid(config, path, header, to_string(spec.varying_u), to_string(spec.varying_v), "W",
             grid, slice.values);
  outputs.files.push_back(path.string());
  return outputs;
}

struct SweepOutputs {
  std::vector<std::string> files;
  SweepSeries series;
  SweepSummary summary;
};

SweepOutputs emit_negativity(const RunConfig& config, const std::filesystem::path& dir,
                             const std::string& stem,
                             const std::vector<double>& validate_interior = {}) {
  std::vector<double> kappas;
  if (config.kappa) {
    kappas.push_back(*config.kappa);
  } else {
    for (int i = 0; i < config.kappa_count; ++i)
      kappas.push_back(config.kappa_count == 1
                           ? config.kappa_min
                           : config.kappa_min + (config.kappa_max - config.kappa_min) * double(i) /
                                                    double(config.kappa_count - 1));
  }

  SweepOutputs outputs;
  if (kappas.size() == 1 && config.method != "schmidt") {
    // Single point with an explicit method request: run it directly so the
    // eigensolve path (and its resource cap) is reachable from the CLI.
    const WaveguideParams wg = WaveguideParams::from_kappa(kappas[0], config.coupling_c);
    const TwoModeState state = build_state(config, wg);
    const NegativityMethod method =
        config.method == "eigensolve" ? NegativityMethod::eigensolve : NegativityMethod::both;
    const NegativityResult result = log_negativity(state, method);
    outputs.series.family = to_string(config.family);
    outputs.series.points = {{kappas[0], result.e_n}};
    outputs.series.cutoff_used = result.cutoff_used;
    outputs.series.method = config.method == "both" ? "both" : "eigensolve";
  } else {
    if (config.method != "schmidt" && kappas.size() > 1)
      throw ConfigError("sweeps use the schmidt method; --method " + config.method +
                        " requires a single --kappa");
    SweepOptions options;
    options.coupling_c = config.coupling_c;
    options.tail_tolerance = config.tail_tolerance;
    options.cutoff_cap = config.cutoff_cap;
    options.n_max = config.n_max;
    options.threads = config.threads;
    options.validate_interior = validate_interior;
    outputs.series = negativity_sweep(config.family_spec(), kappas, options);
  }
  outputs.summary = summarize_sweep(outputs.series);

  const WaveguideParams wg_echo = WaveguideParams::from_kappa(kappas.front(), config.coupling_c);
  HeaderMap header = base_header(config, wg_echo);
  header.emplace_back("n_max", std::to_string(outputs.series.cutoff_used));
  header.emplace_back("method", outputs.series.method);

  std::vector<double> xs, ys;
  for (const auto& point : outputs.series.points) {
    xs.push_back(point.kappa);
    ys.push_back(point.e_n);
  }
  const std::filesystem::path data_path = dir / (stem + data_extension(config));
  if (config.format == "json")
    write_series_json(data_path, header, "kappa", "E_N", xs, ys);
  else
    write_series_csv(data_path, header, "kappa", "E_N", xs, ys);
  outputs.files.push_back(data_path.string());

  nlohmann::ordered_json meta;
  meta["schema_version"] = 1;
  meta["command"] = config.command;
  meta["family"] = outputs.series.family.empty() ? to_string(config.family)
                                                 : outputs.series.family;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [key, value] : outputs.series.params) params[key] = value;
  meta["params"] = params;
  meta["coupling_c"] = config.coupling_c;
  meta["method"] = outputs.series.method;
  meta["cutoff_used"] = outputs.series.cutoff_used;
  meta["tail_tolerance"] = config.tail_tolerance;
  meta["frame"] = kFrameNote;
  meta["summary"] = {{"min", outputs.summary.min_value},
                     {"max", outputs.summary.max_value},
                     {"argmin", outputs.summary.argmin},
                     {"argmax", outputs.summary.argmax},
                     {"detected_period", outputs.summary.fundamental_period},
                     {"fundamental_period", outputs.summary.fundamental_period},
                     {"period_tolerance", outputs.summary.period_tolerance},
                     {"deviation_at_delta_kappa_2", outputs.summary.deviation_at_two}};
  const std::filesystem::path meta_path = dir / (stem + "_meta.json");
  write_json_file(meta_path, meta);
  outputs.files.push_back(meta_path.string());
  return outputs;
}

// ---- figure presets -------------------------------------------------------

struct FigurePreset {
  RunConfig config;
  nlohmann::ordered_json reference;
  std::string note;
};

void apply_overrides(RunConfig& preset, const RunConfig& user,
                     const std::set<std::string>& overrides) {
  if (overrides.count("out")) preset.out_dir = user.out_dir;
  if (overrides.count("threads")) preset.threads = user.threads;
  if (overrides.count("format")) preset.format = user.format;
  if (overrides.count("tail_tol")) preset.tail_tolerance = user.tail_tolerance;
  if (overrides.count("cutoff_cap")) preset.cutoff_cap = user.cutoff_cap;
  if (overrides.count("nmax")) preset.n_max = user.n_max;
  if (overrides.count("kappa_count")) preset.kappa_count = user.kappa_count;
}

FigurePreset figure_preset(const std::string& id, const RunConfig& user,
                           const std::set<std::string>& overrides) {
  FigurePreset preset;
  RunConfig& cfg = preset.config;
  cfg.out_dir = user.out_dir;
  cfg.threads = user.threads;
  cfg.format = user.format;

  if (id == "fig1" || id == "fig2") {
    cfg.command = id == "fig1" ? "state" : "wigner";
    cfg.family = Family::ps_vortex;
    cfg.k = 1;
    cfg.r = 2.1;
    cfg.phi = std::numbers::pi / 2.0;
    cfg.coupling_c = 2e10;
    // r = 2.1 pushes the adaptive cutoff against the 256 cap: the snapshot at
    // t > 0 keeps ~4e-3 of its mass in corner-truncated photon-number
    // sectors, far outside the plotted window. The tolerance admits that and
    // every output echoes its actual tail estimate.
    cfg.cutoff_cap = 256;
    cfg.tail_tolerance = 1e-2;
    preset.reference = {{"coupling_c", 2e10}, {"r", 2.1}, {"phi", "pi/2"},
                        {"times_s", {0.0, 1e-6}}};
    preset.note = "propagation snapshots at t = 0 and t = 1e-6 s; plotting-grade "
                  "truncation tolerance, see tail_estimate per output";
  } else if (id == "fig3" || id == "fig4") {
    cfg.command = id == "fig3" ? "state" : "wigner";
    cfg.family = Family::bs_vortex;
    cfg.k = 1;
    cfg.r_x = 0.2;
    cfg.r_y = 0.5;
    cfg.eta_x = 1.0;
    cfg.eta_y = 0.75;
    cfg.coupling_c = 2e10;
    preset.reference = {{"coupling_c", 2e10}, {"r_x", 0.2}, {"r_y", 0.5},
                        {"eta_x", 1.0},      {"eta_y", 0.75}, {"times_s", {0.0, 1e-6}}};
    preset.note = "propagation snapshots at t = 0 and t = 1e-6 s";
  } else if (id == "fig5a" || id == "fig5b") {
    cfg.command = "negativity";
    cfg.family = Family::ps_vortex;
    cfg.k = id == "fig5a" ? 2 : 3;
    cfg.r = 1.0;
    cfg.coupling_c = 2e10;
    preset.reference = {{"e_n_at_kappa_0", 2.525},
                        {"e_n_max", 2.541},
                        {"max_location_kappa", 2.5},
                        {"reported_for_k", 2}};
    preset.note = "published sweep values listed for comparison in this manifest";
  } else if (id == "fig6") {
    cfg.command = "negativity";
    cfg.family = Family::bs_vortex;
    cfg.k = 1;
    cfg.r_x = 1.0;
    cfg.r_y = 1.0;
    cfg.eta_x = 1.0;
    cfg.eta_y = 0.75;
    cfg.coupling_c = 2e10;
    // r_x = r_y = 1 needs a cutoff well past the default cap; the relaxed
    // tail keeps the sweep inside a laptop-scale runtime.
    cfg.cutoff_cap = 1024;
    cfg.tail_tolerance = 1e-5;
    preset.reference = {{"e_n_at_kappa_0", 1.8},
                        {"e_n_max", 2.4},
                        {"max_location_kappa", 2.25},
                        {"zero_location_kappa", 7.25}};
    preset.note = "published sweep values listed for comparison in this manifest";
  } else {
    throw ConfigError("unknown-figure-id: '" + id + "'");
  }

  apply_overrides(cfg, user, overrides);
  cfg.validate();
  return preset;
}

}  // namespace

int run_state(const RunConfig& config) {
  emit_state(config, config.out_dir, "state");
  return 0;
}

int run_wigner(const RunConfig& config) {
  emit_wigner(config, config.out_dir, "wigner");
  return 0;
}

int run_negativity(const RunConfig& config) {
  emit_negativity(config, config.out_dir, "sweep");
  return 0;
}

int run_figure(const RunConfig& user, const std::set<std::string>& overrides) {
  FigurePreset preset = figure_preset(user.figure_id, user, overrides);
  RunConfig cfg = preset.config;
  const std::filesystem::path dir = std::filesystem::path(user.out_dir) / user.figure_id;
  cfg.out_dir = dir.string();

  nlohmann::ordered_json manifest;
  manifest["schema_version"] = 1;
  manifest["figure"] = user.figure_id;
  manifest["note"] = preset.note;
  manifest["frame"] = kFrameNote;
  manifest["published_reference"] = preset.reference;

  nlohmann::ordered_json parameters;
  parameters["family"] = to_string(cfg.family);
  parameters["k"] = cfg.k;
  if (cfg.family == Family::bs_vortex) {
    parameters["r_x"] = cfg.r_x;
    parameters["r_y"] = cfg.r_y;
    parameters["eta_x"] = cfg.eta_x;
    parameters["eta_y"] = cfg.eta_y;
  } else {
    parameters["r"] = cfg.r;
  }
  parameters["phi"] = cfg.phi;
  parameters["coupling_c"] = cfg.coupling_c;
  parameters["tail_tolerance"] = cfg.tail_tolerance;
  parameters["cutoff_cap"] = cfg.cutoff_cap;
  manifest["parameters"] = parameters;

  std::vector<std::string> files;
  if (cfg.command == "state" || cfg.command == "wigner") {
    const double snapshot_time = 1e-6;
    for (int snapshot = 0; snapshot < 2; ++snapshot) {
      RunConfig run = cfg;
      run.time_t = snapshot == 0 ? 0.0 : snapshot_time;
      const std::string suffix = snapshot == 0 ? "_t0" : "_t1";
      if (cfg.command == "state") {
        auto outputs = emit_state(run, dir, "state" + suffix);
        files.insert(files.end(), outputs.files.begin(), outputs.files.end());
      } else {
        RunConfig xy = run;
        xy.slice = "x,y";
        xy.pins = "p_x=0,p_y=0";
        auto outputs = emit_wigner(xy, dir, "wigner_xy" + suffix);
        files.insert(files.end(), outputs.files.begin(), outputs.files.end());
        RunConfig ypx = run;
        ypx.slice = "y,p_x";
        ypx.pins = "x=0,p_y=0";
        outputs = emit_wigner(ypx, dir, "wigner_ypx" + suffix);
        files.insert(files.end(), outputs.files.begin(), outputs.files.end());
      }
    }
    if (user.figure_id == "fig1" || user.figure_id == "fig2")
      manifest["expected_runtime_seconds"] = cfg.command == "state" ? 15 : 90;
  } else {
    // Negativity sweeps validate the closed-form route against the generic
    // unitary at the endpoints; the cheap photon-subtracted sweeps also
    // validate at an interior angle.
    std::vector<double> interior;
    if (cfg.family == Family::ps_vortex) interior.push_back(0.25);
    auto outputs = emit_negativity(cfg, dir, "sweep", interior);
    files.insert(files.end(), outputs.files.begin(), outputs.files.end());
    manifest["computed"] = {
        {"e_n_at_first_kappa", outputs.series.points.front().e_n},
        {"min", outputs.summary.min_value},
        {"max", outputs.summary.max_value},
        {"argmin", outputs.summary.argmin},
        {"argmax", outputs.summary.argmax},
        {"detected_period", outputs.summary.fundamental_period},
        {"deviation_at_delta_kappa_2", outputs.summary.deviation_at_two},
        {"cutoff_used", outputs.series.cutoff_used}};
  }
  manifest["outputs"] = files;
  write_json_file(dir / "manifest.json", manifest);
  return 0;
}

}  // namespace vortexprop::cli
