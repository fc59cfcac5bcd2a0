#pragma once

#include <set>
#include <string>

#include "run_config.hpp"

namespace vortexprop::cli {

int run_state(const RunConfig& config);
int run_wigner(const RunConfig& config);
int run_negativity(const RunConfig& config);

// Fields of `config` that the user set explicitly and that figure presets
// must therefore not override.
int run_figure(const RunConfig& config, const std::set<std::string>& user_overrides);

}  // namespace vortexprop::cli
