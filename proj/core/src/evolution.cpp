#include "vortexprop/evolution.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "vortexprop/detail/gaussian.hpp"
#include "vortexprop/parallel.hpp"

namespace vortexprop {

namespace {
constexpr int kAdaptiveStart = 16;
}

WaveguideParams WaveguideParams::from_time(double coupling_c, double time_t) {
  WaveguideParams wg;
  wg.coupling_c = coupling_c;
  wg.time_t = time_t;
  wg.kappa = coupling_c * time_t / std::numbers::pi;
  wg.validate();
  return wg;
}

WaveguideParams WaveguideParams::from_kappa(double kappa, double coupling_c) {
  WaveguideParams wg;
  wg.coupling_c = coupling_c;
  wg.kappa = kappa;
  wg.time_t = kappa * std::numbers::pi / coupling_c;
  wg.validate();
  return wg;
}

double WaveguideParams::theta() const {
  return std::fmod(kappa, 2.0) * std::numbers::pi;
}

void WaveguideParams::validate() const {
  if (!(coupling_c > 0.0)) throw ConfigError("WaveguideParams: coupling C must be > 0");
  if (!(time_t >= 0.0) || !std::isfinite(time_t))
    throw ConfigError("WaveguideParams: time must be finite and >= 0");
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw ConfigError("WaveguideParams: kappa must be finite and >= 0");
}

namespace detail {

CouplerRotor::CouplerRotor(int n_max, int threads) : n_max_(n_max) {
  vectors_.resize(2 * n_max + 1);
  values_.resize(2 * n_max + 1);
  parallel_for(2 * n_max + 1, threads, [&](int total) {
    const int lo = std::max(0, total - n_max);
    const int hi = std::min(total, n_max);
    const int size = hi - lo + 1;
    if (size == 1) return;
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(size);
    Eigen::VectorXd sub(size - 1);
    for (int i = 0; i + 1 < size; ++i) {
      const int m = lo + i;
      sub(i) = std::sqrt(double(m + 1) * double(total - m));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub);
    vectors_[total] = es.eigenvectors();
    values_[total] = es.eigenvalues();
  });
}

AmplitudeMatrix CouplerRotor::apply(const AmplitudeMatrix& table, double theta,
                                    int threads) const {
  if (table.rows() != n_max_ + 1)
    throw ConfigError("CouplerRotor: table does not match the prepared cutoff");
  if (theta == 0.0) return table;
  AmplitudeMatrix out = AmplitudeMatrix::Zero(table.rows(), table.cols());
  parallel_for(2 * n_max_ + 1, threads, [&](int total) {
    const int lo = std::max(0, total - n_max_);
    const int hi = std::min(total, n_max_);
    const int size = hi - lo + 1;
    if (size == 1) {
      out(lo, total - lo) = table(lo, total - lo);
      return;
    }
    Eigen::VectorXcd block(size);
    for (int i = 0; i < size; ++i) block(i) = table(lo + i, total - lo - i);
    Eigen::VectorXcd rotated = vectors_[total].transpose() * block;
    for (int i = 0; i < size; ++i) rotated(i) *= std::polar(1.0, -theta * values_[total](i));
    block = vectors_[total] * rotated;
    for (int i = 0; i < size; ++i) out(lo + i, total - lo - i) = block(i);
  });
  return out;
}

AmplitudeMatrix tmsv_table(const SqueezeParams& params, int n_max) {
  const Complex ratio = std::tanh(params.r) * std::polar(1.0, params.phi);
  AmplitudeMatrix table = AmplitudeMatrix::Zero(n_max + 1, n_max + 1);
  Complex c = 1.0;
  for (int n = 0; n <= n_max; ++n) {
    table(n, n) = c;
    c *= ratio;
  }
  return table;
}

AmplitudeMatrix squeezed_product_table(const BsVortexParams& params, int n_max) {
  // Diagonal quadratic form: no mixed recursion paths, stable at any r.
  const Complex phase = std::polar(1.0, params.phi);
  return gaussian_pair_amplitudes(phase * std::tanh(2.0 * params.r_x), 0.0,
                                  phase * std::tanh(2.0 * params.r_y), n_max);
}

AmplitudeMatrix apply_ps_polynomial(const AmplitudeMatrix& table, int k, double theta) {
  if (k == 0) return table;
  const int dim = int(table.rows());
  const Complex ca = std::cos(theta);
  const Complex cb = Complex(0.0, -std::sin(theta));
  AmplitudeMatrix out = AmplitudeMatrix::Zero(dim, dim);
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    const int da = k - j;
    const int db = j;
    const Complex w = binom * std::pow(ca, da) * std::pow(cb, db);
    if (std::abs(w) > 0.0) {
      for (int m = da; m < dim; ++m) {
        double fa = 1.0;
        for (int p = 0; p < da; ++p) fa *= double(m - p);
        const double ra = std::sqrt(fa);
        for (int n = db; n < dim; ++n) {
          double fb = 1.0;
          for (int p = 0; p < db; ++p) fb *= double(n - p);
          out(m, n) += w * ra * std::sqrt(fb) * table(m - da, n - db);
        }
      }
    }
    binom *= double(k - j) / double(j + 1);
  }
  return out;
}

AmplitudeMatrix apply_bs_polynomial(const AmplitudeMatrix& table, const BsVortexParams& params,
                                    double theta) {
  // X_a -> cos X_a - sin P_b and Y_b -> cos Y_b - sin P_a under conjugation.
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Complex i_unit(0.0, 1.0);
  const Complex wa = (params.eta_x * c + params.eta_y * s) * inv_sqrt2;
  const Complex wad = (params.eta_x * c - params.eta_y * s) * inv_sqrt2;
  const Complex wb = -i_unit * (params.eta_y * c - params.eta_x * s) * inv_sqrt2;
  const Complex wbd = -i_unit * (params.eta_y * c + params.eta_x * s) * inv_sqrt2;

  const int dim = int(table.rows());
  AmplitudeMatrix current = table;
  for (int pass = 0; pass < params.k; ++pass) {
    AmplitudeMatrix next = AmplitudeMatrix::Zero(dim, dim);
    for (int m = 0; m < dim; ++m)
      for (int n = 0; n < dim; ++n) {
        Complex acc = 0.0;
        if (m + 1 < dim) acc += wa * std::sqrt(double(m + 1)) * current(m + 1, n);
        if (m >= 1) acc += wad * std::sqrt(double(m)) * current(m - 1, n);
        if (n + 1 < dim) acc += wb * std::sqrt(double(n + 1)) * current(m, n + 1);
        if (n >= 1) acc += wbd * std::sqrt(double(n)) * current(m, n - 1);
        next(m, n) = acc;
      }
    current.swap(next);
  }
  return current;
}

}  // namespace detail

TwoModeState evolve_state(const TwoModeState& state, const WaveguideParams& wg, int threads) {
  wg.validate();
  const double theta = wg.theta();
  if (theta == 0.0) return state;
  const detail::CouplerRotor rotor(state.n_max(), threads);
  return TwoModeState(rotor.apply(state.amplitudes(), theta, threads), state.cutoff(),
                      state.tail_estimate());
}

double ps_vortex_sector_tail(double r, int k, int n_max) {
  // Occupied sectors are N = 2m + k with the negative-binomial weights of the
  // subtracted state; demand containment N <= n_max.
  const int m_top = (n_max - k) / 2;
  return ps_vortex_tail(r, k, m_top + k);
}

TwoModeState evolved_ps_vortex(const SqueezeParams& params, int k, const WaveguideParams& wg,
                               FockCutoff cutoff, int max_order) {
  params.validate();
  wg.validate();
  cutoff.validate();
  if (k < 0) throw ConfigError("evolved_ps_vortex: k must be >= 0");
  if (k > max_order)
    throw ConfigError("evolved_ps_vortex: vortex order exceeds the configured cap");

  const double tail = ps_vortex_sector_tail(params.r, k, cutoff.n_max);
  if (tail > cutoff.tail_tolerance)
    throw NumericalError("cutoff-too-small: evolved photon-subtracted state needs sector room; "
                         "tail " + std::to_string(tail) + " at n_max=" +
                         std::to_string(cutoff.n_max));

  const double theta = wg.theta();
  const detail::CouplerRotor rotor(cutoff.n_max);
  AmplitudeMatrix table = rotor.apply(detail::tmsv_table(params, cutoff.n_max), theta);
  table = detail::apply_ps_polynomial(table, k, theta);

  const double norm = table.norm();
  if (norm < kZeroThreshold) throw NumericalError("evolved_ps_vortex: state vanished");
  table /= norm;
  return TwoModeState(std::move(table), cutoff, tail);
}

TwoModeState evolved_ps_vortex(const SqueezeParams& params, int k, const WaveguideParams& wg,
                               const AdaptiveCutoff& adaptive, int max_order) {
  for (int n = kAdaptiveStart; n <= adaptive.cap; n *= 2) {
    if (ps_vortex_sector_tail(params.r, k, n) <= adaptive.tail_tolerance)
      return evolved_ps_vortex(params, k, wg, FockCutoff{n, adaptive.tail_tolerance}, max_order);
  }
  throw NumericalError("cutoff-too-small: adaptive cap reached for evolved_ps_vortex");
}

TwoModeState evolved_bs_vortex(const BsVortexParams& params, const WaveguideParams& wg,
                               FockCutoff cutoff, int max_order) {
  params.validate(max_order);
  wg.validate();
  cutoff.validate();

  const double theta = wg.theta();
  const detail::CouplerRotor rotor(cutoff.n_max);
  AmplitudeMatrix table =
      rotor.apply(detail::squeezed_product_table(params, cutoff.n_max), theta);
  table = detail::apply_bs_polynomial(table, params, theta);

  const double tail = shell_tail_estimate(table);
  if (tail > cutoff.tail_tolerance)
    throw NumericalError("cutoff-too-small: evolved beam-splitter vortex tail " +
                         std::to_string(tail) + " at n_max=" + std::to_string(cutoff.n_max));
  const double norm = table.norm();
  if (norm < kZeroThreshold) throw NumericalError("evolved_bs_vortex: state vanished");
  table /= norm;
  return TwoModeState(std::move(table), cutoff, tail);
}

TwoModeState evolved_bs_vortex(const BsVortexParams& params, const WaveguideParams& wg,
                               const AdaptiveCutoff& adaptive, int max_order) {
  for (int n = kAdaptiveStart; n <= adaptive.cap; n *= 2) {
    try {
      return evolved_bs_vortex(params, wg, FockCutoff{n, adaptive.tail_tolerance}, max_order);
    } catch (const NumericalError&) {
      if (2 * n > adaptive.cap) throw;
    }
  }
  throw NumericalError("cutoff-too-small: adaptive cap reached for evolved_bs_vortex");
}

}  // namespace vortexprop
