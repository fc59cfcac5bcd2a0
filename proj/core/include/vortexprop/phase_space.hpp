#pragma once

#include <array>
#include <functional>
#include <numbers>
#include <span>
#include <string>

#include "vortexprop/evolution.hpp"
#include "vortexprop/fock.hpp"
#include "vortexprop/state_factory.hpp"

namespace vortexprop {

// Two-mode Wigner bound 4/pi^2 under this normalization.
inline double wigner_peak() { return 4.0 / (std::numbers::pi * std::numbers::pi); }

enum class AxisLabel { x, y, p_x, p_y };

std::string to_string(AxisLabel label);
AxisLabel parse_axis_label(const std::string& text);

struct AxisRange {
  double min = -5.0;
  double max = 5.0;
  int count = 101;

  double value(int i) const { return min + (max - min) * double(i) / double(count - 1); }
  void validate() const;
};

struct Grid2D {
  AxisRange axis_u, axis_v;
  AxisLabel label_u = AxisLabel::x;
  AxisLabel label_v = AxisLabel::y;

  void validate() const;
};

// Phase-space point in quadrature labels; the coherent parameters are
// alpha = x - i p_x, beta = y - i p_y (one conversion function below).
struct Point4 {
  double x = 0.0, p_x = 0.0, y = 0.0, p_y = 0.0;

  double& coord(AxisLabel label);
  double coord(AxisLabel label) const;
};

inline Complex coherent_alpha(double position, double momentum) {
  return Complex(position, -momentum);
}

// A 2D cut of the 4D phase space: two varying labels (matching the grid) and
// the other two pinned at fixed values. All four labels appear exactly once.
struct SliceSpec {
  AxisLabel varying_u = AxisLabel::x;
  AxisLabel varying_v = AxisLabel::y;
  std::array<std::pair<AxisLabel, double>, 2> pinned{{{AxisLabel::p_x, 0.0}, {AxisLabel::p_y, 0.0}}};

  void validate() const;
  Point4 point_at(double u, double v) const;
};

struct QuadratureField {
  Grid2D grid;
  Eigen::MatrixXcd values;  // values(i, j) = Psi(u_i, v_j)
};

struct WignerSlice {
  SliceSpec slice;
  Grid2D grid;
  Eigen::MatrixXd values;
};

// Psi(x, y) = sum c(m, n) phi_m(x) phi_n(y) over harmonic-oscillator
// eigenfunctions, ground state pi^{-1/4} exp(-x^2/2). Grid labels must be
// (x, y).
QuadratureField quadrature_wavefunction(const TwoModeState& state, const Grid2D& grid);

// Accumulated phase of Psi around the origin-centered circle, in units of
// 2 pi, rounded. Fails when the amplitude drops below 1e-8 on the contour.
int winding_number(const QuadratureField& field, double radius, int samples = 720);

// Displaced-parity Wigner function evaluated through exact displaced-parity
// kernels (closed-form matrix elements), so the only error source is the
// state's own truncation.
WignerSlice wigner_slice(const TwoModeState& state, const SliceSpec& spec, const Grid2D& grid,
                         int threads = 0);

// Single-point evaluator over the full 4D phase space.
std::function<double(const Point4&)> wigner_sampler(const TwoModeState& state);

// Closed-form Wigner of the photon-subtracted family: a Laguerre factor in
// the Bogoliubov-transformed coordinate,
//   W = (4/pi^2) (-1)^k L_k(4 |at|^2) exp(-2(|at|^2 + |bt|^2)),
// with (at, conj(bt)) = [[cosh r, -sinh r e^{i phi}], [-sinh r e^{i phi},
// cosh r]] (alpha, conj(beta)).
Eigen::VectorXd wigner_ps_closed_form(const SqueezeParams& params, int k,
                                      std::span<const Point4> points);

// Published closed form for the beam-splitter family (order m := k),
// evaluated verbatim with sigma_i = exp(2 r_i). Known to be only
// qualitatively comparable to the generic method.
Eigen::VectorXd wigner_bs_closed_form(const BsVortexParams& params,
                                      std::span<const Point4> points);

// Quadratic-Hamiltonian transport: the Moyal evolution reduces to the
// classical flow, so W(z, t) = W0(flow_{-t}(z)) exactly. The sampler supplies
// W0 on arbitrary 4D points.
WignerSlice transport_wigner(const std::function<double(const Point4&)>& initial,
                             const WaveguideParams& wg, const SliceSpec& spec, const Grid2D& grid,
                             int threads = 0);

namespace detail {

// phi_0 .. phi_n at x by the normalized three-term recurrence.
Eigen::VectorXd hermite_functions(double x, int n_max);

// K(alpha) = D(alpha) (-1)^n D(alpha)^dagger, exact matrix elements
// (generalized-Laguerre form), Hermitian involution.
Eigen::MatrixXcd parity_kernel(Complex alpha, int n_max);

// Associated Laguerre L_n^{(a)}(z) for real order a via the three-term
// recurrence.
double laguerre(int n, double a, double z);

}  // namespace detail

}  // namespace vortexprop
