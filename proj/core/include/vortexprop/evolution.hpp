#pragma once

#include <vector>

#include "vortexprop/fock.hpp"
#include "vortexprop/state_factory.hpp"

namespace vortexprop {

inline constexpr double kDefaultCoupling = 2e10;  // s^-1

// Lossless two-guide coupler: H = hbar C (a'b + ab'), with the free-rotation
// term dropped (co-rotating frame; it is a local phase and changes no
// observable computed here). kappa = C t / pi is the dimensionless
// propagation parameter; exactly one of t / kappa is supplied.
struct WaveguideParams {
  double coupling_c = kDefaultCoupling;
  double time_t = 0.0;
  double kappa = 0.0;

  static WaveguideParams from_time(double coupling_c, double time_t);
  static WaveguideParams from_kappa(double kappa, double coupling_c = kDefaultCoupling);

  // Ct reduced mod 2 pi, so large sweeps stay accurate.
  double theta() const;

  void validate() const;
};

// exp(-i Ct (a'b + ab')) restricted to the truncated space, applied per
// total-photon-number block (the coupling conserves n_a + n_b exactly).
TwoModeState evolve_state(const TwoModeState& state, const WaveguideParams& wg, int threads = 0);

// Closed-form route for the propagated photon-subtracted state: the conjugated
// creation polynomial (a' cos - i b' sin)^k applied to the coupler image of
// the squeezed vacuum, built by the Gaussian recursion. Agrees with
// evolve_state(make_ps_vortex(...)) up to truncation.
TwoModeState evolved_ps_vortex(const SqueezeParams& params, int k, const WaveguideParams& wg,
                               FockCutoff cutoff, int max_order = kDefaultMaxVortexOrder);
TwoModeState evolved_ps_vortex(const SqueezeParams& params, int k, const WaveguideParams& wg,
                               const AdaptiveCutoff& adaptive = {},
                               int max_order = kDefaultMaxVortexOrder);

// Same for the beam-splitter vortex: the quadrature polynomial picks up
// momentum components under conjugation while the squeezed product state
// acquires a coupled quadratic form.
TwoModeState evolved_bs_vortex(const BsVortexParams& params, const WaveguideParams& wg,
                               FockCutoff cutoff, int max_order = kDefaultMaxVortexOrder);
TwoModeState evolved_bs_vortex(const BsVortexParams& params, const WaveguideParams& wg,
                               const AdaptiveCutoff& adaptive = {},
                               int max_order = kDefaultMaxVortexOrder);

// Analytic sector containment bound for the evolved photon-subtracted family:
// total photon number is conserved, so a cutoff holding every occupied sector
// below tolerance works for every kappa.
double ps_vortex_sector_tail(double r, int k, int n_max);

namespace detail {

// Per-block eigendecomposition of the coupling generator, built once per
// cutoff and reused across angles (each apply is then O(size^2) per block).
class CouplerRotor {
 public:
  explicit CouplerRotor(int n_max, int threads = 0);

  int n_max() const { return n_max_; }
  AmplitudeMatrix apply(const AmplitudeMatrix& table, double theta, int threads = 0) const;

 private:
  int n_max_;
  std::vector<Eigen::MatrixXd> vectors_;
  std::vector<Eigen::VectorXd> values_;
};

// Unnormalized t = 0 Gaussian tables (stable constructions).
AmplitudeMatrix tmsv_table(const SqueezeParams& params, int n_max);
AmplitudeMatrix squeezed_product_table(const BsVortexParams& params, int n_max);

// Conjugated polynomial factors: creation polynomial of the subtracted
// family, quadrature polynomial of the beam-splitter family, both at angle
// theta.
AmplitudeMatrix apply_ps_polynomial(const AmplitudeMatrix& table, int k, double theta);
AmplitudeMatrix apply_bs_polynomial(const AmplitudeMatrix& table, const BsVortexParams& params,
                                    double theta);

}  // namespace detail

}  // namespace vortexprop
