#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>

#include "vortexprop/errors.hpp"

namespace vortexprop {

using Complex = std::complex<double>;
using AmplitudeMatrix = Eigen::MatrixXcd;

// Norms and singular values below this are treated as exact zeros.
inline constexpr double kZeroThreshold = 1e-12;

// Truncation of the two-mode photon-number basis: both modes keep levels
// 0..n_max inclusive. tail_tolerance bounds the admissible probability mass
// estimated to live outside the kept square.
struct FockCutoff {
  int n_max = 16;
  double tail_tolerance = 1e-8;

  int dim() const { return n_max + 1; }
  void validate() const;
};

enum class Mode { a, b };
enum class Ladder { lower, raise };

// Pure two-mode state as a dense table of complex amplitudes c(n_a, n_b).
// Immutable after construction; every operation returns a new state.
class TwoModeState {
 public:
  TwoModeState(AmplitudeMatrix amplitudes, FockCutoff cutoff, double tail_estimate = 0.0);

  const AmplitudeMatrix& amplitudes() const { return amplitudes_; }
  const FockCutoff& cutoff() const { return cutoff_; }
  int n_max() const { return cutoff_.n_max; }
  Complex amplitude(int n_a, int n_b) const { return amplitudes_(n_a, n_b); }

  double norm() const { return amplitudes_.norm(); }
  // Estimated probability mass lost to truncation, accumulated by the
  // operation that built this state.
  double tail_estimate() const { return tail_estimate_; }

  Eigen::MatrixXd probabilities() const { return amplitudes_.cwiseAbs2(); }

 private:
  AmplitudeMatrix amplitudes_;
  FockCutoff cutoff_;
  double tail_estimate_;
};

// |n_a, n_b> within the cutoff. Throws NumericalError("index-out-of-cutoff")
// when either index exceeds n_max.
TwoModeState make_basis_state(int n_a, int n_b, FockCutoff cutoff);

// Standard ladder action on one mode; the result is unnormalized. Raising
// past n_max drops the pushed amplitudes and adds their weight to the
// returned state's tail estimate. Lowering the vacuum yields the zero vector.
TwoModeState apply_ladder(const TwoModeState& state, Mode mode, Ladder direction);

// Returns (unit-norm state, Euclidean norm of the input). Throws on
// zero-norm input.
std::pair<TwoModeState, double> normalize(const TwoModeState& state);

// Singular values of the amplitude table, descending. For a normalized state
// their squares sum to one and they fully determine bipartite entanglement.
struct SchmidtSpectrum {
  Eigen::VectorXd coefficients;
};

SchmidtSpectrum schmidt_coefficients(const TwoModeState& state);

// Fallback truncation-tail estimator for states without an analytic series
// norm: relative probability mass in the outermost two rows or columns of the
// table. (The outer anti-diagonals alone underestimate badly for
// product-squeezed states, whose mass leaves through the axes.)
double shell_tail_estimate(const AmplitudeMatrix& amplitudes);

}  // namespace vortexprop
