#pragma once

#include <optional>
#include <string>

#include "vortexprop/entanglement.hpp"
#include "vortexprop/phase_space.hpp"

namespace vortexprop::cli {

enum class Family { tmsv, ps_vortex, bs_vortex };

Family parse_family(const std::string& text);
std::string to_string(Family family);

// Fully resolved invocation: every default made explicit so output headers
// can echo the exact run.
struct RunConfig {
  std::string command;  // state | wigner | negativity | figure

  Family family = Family::tmsv;
  double r = 0.0;
  double phi = 0.0;
  int k = 1;
  double r_x = 0.0, r_y = 0.0;
  double eta_x = 1.0, eta_y = 0.75;

  double coupling_c = kDefaultCoupling;
  std::optional<double> time_t;
  std::optional<double> kappa;

  // negativity sweep range (used when no single kappa is given)
  double kappa_min = 0.0;
  double kappa_max = 10.0;
  int kappa_count = 201;
  std::string method = "schmidt";

  int n_max = -1;  // -1: adaptive
  double tail_tolerance = 1e-8;
  int cutoff_cap = kDefaultCutoffCap;
  int threads = 0;

  std::string grid_u = "-5:5:101";
  std::string grid_v = "-5:5:101";
  std::string slice = "x,y";
  std::string pins = "p_x=0,p_y=0";

  std::string out_dir = "out";
  std::string format = "csv";  // csv | json
  std::string figure_id;       // figure command only

  WaveguideParams waveguide() const;
  AxisRange parse_axis(const std::string& text) const;
  Grid2D grid(const SliceSpec& spec) const;
  SliceSpec slice_spec() const;
  FamilySpec family_spec() const;

  void validate() const;
};

// JSON file with the same keys as the long-form flags.
void load_config_file(const std::string& path, RunConfig& config);

}  // namespace vortexprop::cli
