#include "vortexprop/state_factory.hpp"

#include <cmath>
#include <complex>

#include "vortexprop/detail/gaussian.hpp"

namespace vortexprop {

namespace {

constexpr int kAdaptiveStart = 16;

[[noreturn]] void throw_cutoff(double tail, const FockCutoff& cutoff) {
  throw NumericalError("cutoff-too-small: estimated truncation tail " + std::to_string(tail) +
                       " exceeds tolerance " + std::to_string(cutoff.tail_tolerance) +
                       " at n_max=" + std::to_string(cutoff.n_max));
}

template <typename Builder>
TwoModeState build_adaptive(const AdaptiveCutoff& adaptive, Builder&& builder) {
  for (int n = kAdaptiveStart; n <= adaptive.cap; n *= 2) {
    try {
      return builder(FockCutoff{n, adaptive.tail_tolerance});
    } catch (const NumericalError&) {
      if (2 * n > adaptive.cap) throw;
    }
  }
  throw NumericalError("cutoff-too-small: adaptive cutoff cap " + std::to_string(adaptive.cap) +
                       " reached before the tail test passed");
}

}  // namespace

double BsVortexParams::norm_constant() const {
  double log_kfac = std::lgamma(double(k) + 1.0);
  double s2 = sigma_x() * sigma_x() + sigma_y() * sigma_y();
  return std::pow(2.0, -0.5 * k) * std::pow(1.0 + xi(), k) /
         (std::exp(0.5 * log_kfac) * std::pow(s2, 0.5 * k));
}

void BsVortexParams::validate(int max_order) const {
  if (!(r_x >= 0.0) || !(r_y >= 0.0))
    throw ConfigError("BsVortexParams: squeezing amplitudes must be >= 0");
  if (eta_x == 0.0 && eta_y == 0.0)
    throw ConfigError("BsVortexParams: (eta_x, eta_y) must not both vanish");
  if (k < 1) throw ConfigError("BsVortexParams: vortex order k must be >= 1");
  if (k > max_order)
    throw ConfigError("BsVortexParams: vortex order " + std::to_string(k) +
                      " exceeds the configured cap " + std::to_string(max_order));
  if (!std::isfinite(phi)) throw ConfigError("BsVortexParams: phi must be finite");
}

double tmsv_tail(double r, int n_max) {
  const double t2 = std::tanh(r) * std::tanh(r);
  return std::pow(t2, double(n_max + 1));
}

double ps_vortex_tail(double r, int k, int n_max) {
  if (k == 0) return tmsv_tail(r, n_max);
  // Normalized weights p_m = C(m+k, k) t^{2m} (1-t^2)^{k+1} on |m+k, m>.
  // Summed from the tail side; 1 - head would floor at machine epsilon.
  const double t2 = std::tanh(r) * std::tanh(r);
  const int m_top = n_max - k;
  if (m_top < 0) return 1.0;
  if (t2 == 0.0) return 0.0;
  double term = std::pow(1.0 - t2, double(k + 1));
  for (int m = 0; m <= m_top; ++m) term *= t2 * double(m + k + 1) / double(m + 1);
  double tail = 0.0;
  int m = m_top + 1;
  while (term > 0.0) {
    tail += term;
    const double ratio = t2 * double(m + k + 1) / double(m + 1);
    term *= ratio;
    ++m;
    if (ratio < 1.0 && term < 1e-3 * tail) {
      tail += term / (1.0 - ratio);  // geometric closure of the remainder
      break;
    }
  }
  return tail;
}

TwoModeState make_tmsv(const SqueezeParams& params, FockCutoff cutoff) {
  params.validate();
  cutoff.validate();
  const double tail = tmsv_tail(params.r, cutoff.n_max);
  if (tail > cutoff.tail_tolerance) throw_cutoff(tail, cutoff);

  const double t = std::tanh(params.r);
  const Complex ratio = t * std::polar(1.0, params.phi);
  AmplitudeMatrix amps = AmplitudeMatrix::Zero(cutoff.dim(), cutoff.dim());
  Complex c = 1.0;
  for (int n = 0; n <= cutoff.n_max; ++n) {
    amps(n, n) = c;
    c *= ratio;
  }
  amps /= amps.norm();
  return TwoModeState(std::move(amps), cutoff, tail);
}

TwoModeState make_tmsv(const SqueezeParams& params, const AdaptiveCutoff& adaptive) {
  return build_adaptive(adaptive, [&](FockCutoff c) { return make_tmsv(params, c); });
}

TwoModeState make_ps_vortex(const SqueezeParams& params, int k, FockCutoff cutoff, int max_order) {
  params.validate();
  cutoff.validate();
  if (k < 0) throw ConfigError("make_ps_vortex: k must be >= 0");
  if (k > max_order)
    throw ConfigError("make_ps_vortex: vortex order " + std::to_string(k) +
                      " exceeds the configured cap " + std::to_string(max_order));
  if (k == 0) return make_tmsv(params, cutoff);

  const double tail = ps_vortex_tail(params.r, k, cutoff.n_max);
  if (tail > cutoff.tail_tolerance) throw_cutoff(tail, cutoff);

  // r -> 0 limit of the normalized family: all k subtracted quanta sit in
  // the signal mode.
  if (params.r < 1e-14) return make_basis_state(k, 0, cutoff);

  TwoModeState state = make_tmsv(params, FockCutoff{cutoff.n_max, 0.99});
  for (int i = 0; i < k; ++i) state = apply_ladder(state, Mode::b, Ladder::lower);
  auto [normalized, n] = normalize(state);
  if (n < kZeroThreshold) throw NumericalError("make_ps_vortex: subtraction annihilated the state");
  return TwoModeState(normalized.amplitudes(), cutoff, tail);
}

TwoModeState make_ps_vortex(const SqueezeParams& params, int k, const AdaptiveCutoff& adaptive,
                            int max_order) {
  return build_adaptive(adaptive,
                        [&](FockCutoff c) { return make_ps_vortex(params, k, c, max_order); });
}

TwoModeState make_bs_vortex(const BsVortexParams& params, FockCutoff cutoff, int max_order) {
  params.validate(max_order);
  cutoff.validate();

  // Product of single-mode squeezed vacua with per-mode Fock ratio
  // q_i = e^{i phi} tanh(2 r_i); this value makes the position-space envelope
  // exp(-x^2 / (2 e^{4 r_i})), i.e. sigma_i = e^{2 r_i}.
  const Complex phase = std::polar(1.0, params.phi);
  const Complex qx = phase * std::tanh(2.0 * params.r_x);
  const Complex qy = phase * std::tanh(2.0 * params.r_y);
  Eigen::MatrixXcd table = detail::gaussian_pair_amplitudes(qx, 0.0, qy, cutoff.n_max);

  // (eta_x X_a - i eta_y Y_b)^k with X = (a + a')/sqrt(2): multiplies the
  // quadrature wavefunction by (eta_x x - i eta_y y)^k.
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Complex wa = params.eta_x * inv_sqrt2;
  const Complex wb = Complex(0.0, -params.eta_y) * inv_sqrt2;
  const int dim = cutoff.dim();
  for (int pass = 0; pass < params.k; ++pass) {
    Eigen::MatrixXcd next = Eigen::MatrixXcd::Zero(dim, dim);
    for (int m = 0; m < dim; ++m)
      for (int n = 0; n < dim; ++n) {
        Complex acc = 0.0;
        if (m + 1 < dim) acc += wa * std::sqrt(double(m + 1)) * table(m + 1, n);
        if (m >= 1) acc += wa * std::sqrt(double(m)) * table(m - 1, n);
        if (n + 1 < dim) acc += wb * std::sqrt(double(n + 1)) * table(m, n + 1);
        if (n >= 1) acc += wb * std::sqrt(double(n)) * table(m, n - 1);
        next(m, n) = acc;
      }
    table.swap(next);
  }

  const double tail = shell_tail_estimate(table);
  if (tail > cutoff.tail_tolerance) throw_cutoff(tail, cutoff);
  const double norm = table.norm();
  if (norm < kZeroThreshold) throw NumericalError("make_bs_vortex: state vanished");
  table /= norm;
  return TwoModeState(std::move(table), cutoff, tail);
}

TwoModeState make_bs_vortex(const BsVortexParams& params, const AdaptiveCutoff& adaptive,
                            int max_order) {
  return build_adaptive(adaptive,
                        [&](FockCutoff c) { return make_bs_vortex(params, c, max_order); });
}

}  // namespace vortexprop
