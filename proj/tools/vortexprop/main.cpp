#include <cstdio>
#include <exception>
#include <set>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "run_config.hpp"

using namespace vortexprop;
using namespace vortexprop::cli;

namespace {

void add_common_options(CLI::App* app, RunConfig& config, std::string& family_text,
                        std::string& config_path) {
  app->add_option("--config", config_path, "JSON config file; flags override its values");
  app->add_option("--family", family_text, "state family: tmsv | ps_vortex | bs_vortex");
  app->add_option("--r", config.r, "squeezing amplitude (tmsv / ps_vortex)");
  app->add_option("--phi", config.phi, "squeezing phase [rad]");
  app->add_option("--k", config.k, "vortex order");
  app->add_option("--rx", config.r_x, "mode-a squeezing amplitude (bs_vortex)");
  app->add_option("--ry", config.r_y, "mode-b squeezing amplitude (bs_vortex)");
  app->add_option("--etax", config.eta_x, "mixing parameter eta_x (bs_vortex)");
  app->add_option("--etay", config.eta_y, "mixing parameter eta_y (bs_vortex)");
  app->add_option("--coupling", config.coupling_c, "waveguide coupling C [1/s]");
  app->add_option("--nmax", config.n_max, "photon-number cutoff (-1: adaptive)");
  app->add_option("--tail-tol", config.tail_tolerance, "admissible truncation tail");
  app->add_option("--cutoff-cap", config.cutoff_cap, "adaptive cutoff cap");
  app->add_option("--threads,-j", config.threads, "worker threads (0: auto)");
  app->add_option("--out", config.out_dir, "output directory");
  app->add_option("--format", config.format, "data file format: csv | json");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-mode vortex states in coupled waveguides: quadrature fields, Wigner "
               "slices and logarithmic negativity"};
  app.require_subcommand(1);

  RunConfig config;
  std::string family_text = "tmsv";
  std::string config_path;
  double time_value = 0.0, kappa_value = 0.0;

  auto* state = app.add_subcommand("state", "quadrature contour and phase grids");
  auto* wigner = app.add_subcommand("wigner", "Wigner function on a 2D phase-space slice");
  auto* negativity = app.add_subcommand("negativity", "logarithmic negativity vs kappa");
  auto* figure = app.add_subcommand("figure", "bundled reproduction presets");

  for (CLI::App* sub : {state, wigner, negativity, figure}) {
    add_common_options(sub, config, family_text, config_path);
    sub->add_option("--time", time_value, "propagation time t [s]");
    sub->add_option("--kappa", kappa_value, "dimensionless propagation parameter C t / pi");
  }
  for (CLI::App* sub : {state, wigner}) {
    sub->add_option("--ugrid", config.grid_u, "first axis as min:max:count");
    sub->add_option("--vgrid", config.grid_v, "second axis as min:max:count");
  }
  wigner->add_option("--slice", config.slice, "varying axes, e.g. x,y");
  wigner->add_option("--pin", config.pins, "pinned axes, e.g. p_x=0,p_y=0");
  negativity->add_option("--kappa-min", config.kappa_min, "sweep start");
  negativity->add_option("--kappa-max", config.kappa_max, "sweep end");
  negativity->add_option("--kappa-count", config.kappa_count, "sweep sample count");
  negativity->add_option("--method", config.method, "schmidt | eigensolve | both");
  figure->add_option("id", config.figure_id,
                     "figure id: fig1 fig2 fig3 fig4 fig5a fig5b fig6")->required();
  figure->add_option("--kappa-count", config.kappa_count, "sweep sample count override");

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* sub = app.get_subcommands().front();
    config.command = sub->get_name();

    // Config file first, then flags override whatever the user set.
    if (!config_path.empty()) {
      RunConfig from_file = config;
      load_config_file(config_path, from_file);
      auto keep_flag = [&](const std::string& flag) { return sub->count(flag) > 0; };
      RunConfig merged = from_file;
      merged.command = config.command;
      merged.figure_id = config.figure_id;
      if (keep_flag("--family")) merged.family = parse_family(family_text);
      if (keep_flag("--r")) merged.r = config.r;
      if (keep_flag("--phi")) merged.phi = config.phi;
      if (keep_flag("--k")) merged.k = config.k;
      if (keep_flag("--rx")) merged.r_x = config.r_x;
      if (keep_flag("--ry")) merged.r_y = config.r_y;
      if (keep_flag("--etax")) merged.eta_x = config.eta_x;
      if (keep_flag("--etay")) merged.eta_y = config.eta_y;
      if (keep_flag("--coupling")) merged.coupling_c = config.coupling_c;
      if (keep_flag("--nmax")) merged.n_max = config.n_max;
      if (keep_flag("--tail-tol")) merged.tail_tolerance = config.tail_tolerance;
      if (keep_flag("--cutoff-cap")) merged.cutoff_cap = config.cutoff_cap;
      if (keep_flag("--threads")) merged.threads = config.threads;
      if (keep_flag("--out")) merged.out_dir = config.out_dir;
      if (keep_flag("--format")) merged.format = config.format;
      if (keep_flag("--ugrid")) merged.grid_u = config.grid_u;
      if (keep_flag("--vgrid")) merged.grid_v = config.grid_v;
      if (sub->get_name() == "wigner") {
        if (keep_flag("--slice")) merged.slice = config.slice;
        if (keep_flag("--pin")) merged.pins = config.pins;
      }
      if (sub->get_name() == "negativity") {
        if (keep_flag("--kappa-min")) merged.kappa_min = config.kappa_min;
        if (keep_flag("--kappa-max")) merged.kappa_max = config.kappa_max;
        if (keep_flag("--kappa-count")) merged.kappa_count = config.kappa_count;
        if (keep_flag("--method")) merged.method = config.method;
      }
      if (keep_flag("--time")) merged.time_t = time_value;
      if (keep_flag("--kappa")) merged.kappa = kappa_value;
      config = merged;
    } else {
      config.family = parse_family(family_text);
      if (sub->count("--time")) config.time_t = time_value;
      if (sub->count("--kappa")) config.kappa = kappa_value;
    }
    config.validate();

    if (config.command == "state") return run_state(config);
    if (config.command == "wigner") return run_wigner(config);
    if (config.command == "negativity") return run_negativity(config);

    std::set<std::string> overrides;
    for (const auto& [flag, key] :
         std::initializer_list<std::pair<const char*, const char*>>{
             {"--out", "out"},
             {"--threads", "threads"},
             {"--format", "format"},
             {"--tail-tol", "tail_tol"},
             {"--cutoff-cap", "cutoff_cap"},
             {"--nmax", "nmax"},
             {"--kappa-count", "kappa_count"}})
      if (sub->count(flag)) overrides.insert(key);
    return run_figure(config, overrides);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    switch (e.kind()) {
      case Error::Kind::config: return 2;
      case Error::Kind::numerical: return 3;
      case Error::Kind::resource: return 4;
    }
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 1;
  }
}
