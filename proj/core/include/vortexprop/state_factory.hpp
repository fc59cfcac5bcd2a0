#pragma once

#include <cmath>

#include "vortexprop/fock.hpp"

namespace vortexprop {

inline constexpr int kDefaultCutoffCap = 256;
inline constexpr int kDefaultMaxVortexOrder = 8;

struct SqueezeParams {
  double r = 0.0;    // squeezing amplitude, dimensionless
  double phi = 0.0;  // squeezing phase, radians

  void validate() const {
    if (!(r >= 0.0)) throw ConfigError("SqueezeParams: r must be >= 0");
    if (!std::isfinite(phi)) throw ConfigError("SqueezeParams: phi must be finite");
  }
};

struct BsVortexParams {
  double r_x = 0.0;
  double r_y = 0.0;
  double eta_x = 1.0;
  double eta_y = 1.0;
  int k = 1;         // vortex order
  double phi = 0.0;  // squeezing phase, radians

  double r() const { return std::hypot(r_x, r_y); }
  double sigma_x() const { return std::exp(2.0 * r_x); }
  double sigma_y() const { return std::exp(2.0 * r_y); }
  double xi() const { return std::tanh(2.0 * r()); }
  // A = 2^{-k/2} (1+xi)^k / ( sqrt(k!) (sigma_x^2 + sigma_y^2)^{k/2} )
  double norm_constant() const;

  void validate(int max_order = kDefaultMaxVortexOrder) const;
};

// Cutoff chosen by doubling n_max from 16 until the tail test passes; hitting
// the cap raises cutoff-too-small.
struct AdaptiveCutoff {
  double tail_tolerance = 1e-8;
  int cap = kDefaultCutoffCap;
};

// Two-mode squeezed vacuum: c(n, n) = e^{i n phi} tanh^n(r) / cosh(r).
TwoModeState make_tmsv(const SqueezeParams& params, FockCutoff cutoff);
TwoModeState make_tmsv(const SqueezeParams& params, const AdaptiveCutoff& adaptive = {});

// Photon-subtracted squeezed vacuum: k lowering operations on one mode,
// renormalized. Support lies on the diagonal n_a - n_b = k. k = 0 passes
// through to make_tmsv.
TwoModeState make_ps_vortex(const SqueezeParams& params, int k, FockCutoff cutoff,
                            int max_order = kDefaultMaxVortexOrder);
TwoModeState make_ps_vortex(const SqueezeParams& params, int k,
                            const AdaptiveCutoff& adaptive = {},
                            int max_order = kDefaultMaxVortexOrder);

// Beam-splitter vortex: the degree-k quadrature polynomial
// (eta_x X_a - i eta_y Y_b)^k applied to a product of single-mode squeezed
// vacua whose position-space envelopes are exp(-x^2 / (2 sigma_i^2)) with
// sigma_i = exp(2 r_i).
TwoModeState make_bs_vortex(const BsVortexParams& params, FockCutoff cutoff,
                            int max_order = kDefaultMaxVortexOrder);
TwoModeState make_bs_vortex(const BsVortexParams& params, const AdaptiveCutoff& adaptive = {},
                            int max_order = kDefaultMaxVortexOrder);

// Analytic truncation tails against the closed-form series norms.
double tmsv_tail(double r, int n_max);
double ps_vortex_tail(double r, int k, int n_max);

}  // namespace vortexprop
