#include "vortexprop/entanglement.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "vortexprop/parallel.hpp"

namespace vortexprop {

namespace {

double schmidt_negativity(const TwoModeState& state) {
  const Eigen::VectorXd s = schmidt_coefficients(state).coefficients;
  const double sum = s.sum();
  return 0.5 * (sum * sum - 1.0);
}

double eigensolve_negativity(const TwoModeState& state, int dim_cap) {
  const DensityMatrix pt = partial_transpose(density_matrix(state, dim_cap));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt.entries, Eigen::EigenvaluesOnly);
  double neg = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const double lambda = es.eigenvalues()(i);
    if (lambda < -kEigenvalueFloor) neg -= lambda;
  }
  return neg;
}

double e_n_from_negativity(double neg) { return std::log2(1.0 + 2.0 * neg); }

// Maximum-mixing point: resolves a cutoff that holds for the whole sweep,
// since total photon number is conserved.
constexpr double kMixingKappa = 0.25;

TwoModeState build_evolved(const FamilySpec& family, const WaveguideParams& wg,
                           FockCutoff cutoff) {
  if (std::holds_alternative<PsVortexSpec>(family)) {
    const auto& ps = std::get<PsVortexSpec>(family);
    return evolved_ps_vortex(ps.squeeze, ps.k, wg, cutoff);
  }
  return evolved_bs_vortex(std::get<BsVortexParams>(family), wg, cutoff);
}

TwoModeState build_initial(const FamilySpec& family, FockCutoff cutoff) {
  if (std::holds_alternative<PsVortexSpec>(family)) {
    const auto& ps = std::get<PsVortexSpec>(family);
    FockCutoff relaxed{cutoff.n_max, 0.99};
    return make_ps_vortex(ps.squeeze, ps.k, relaxed);
  }
  FockCutoff relaxed{cutoff.n_max, 0.99};
  return make_bs_vortex(std::get<BsVortexParams>(family), relaxed);
}

double fidelity(const TwoModeState& a, const TwoModeState& b) {
  return std::abs((a.amplitudes().conjugate().cwiseProduct(b.amplitudes())).sum());
}

void validate_routes(const FamilySpec& family, double kappa, const SweepOptions& options,
                     FockCutoff cutoff) {
  const WaveguideParams wg = WaveguideParams::from_kappa(kappa, options.coupling_c);
  const TwoModeState closed = build_evolved(family, wg, FockCutoff{cutoff.n_max, 0.99});
  const TwoModeState generic =
      evolve_state(build_initial(family, cutoff), wg, options.threads);
  const double infidelity = std::abs(1.0 - fidelity(closed, generic));
  const double budget = std::max(1e-8, 50.0 * cutoff.tail_tolerance);
  if (infidelity > budget)
    throw NumericalError("negativity_sweep: closed-form and generic evolution disagree at kappa=" +
                         std::to_string(kappa) + " (infidelity " + std::to_string(infidelity) +
                         ")");
}

}  // namespace

DensityMatrix density_matrix(const TwoModeState& state, int dim_cap) {
  const int dim = state.cutoff().dim() * state.cutoff().dim();
  if (dim > dim_cap)
    throw ResourceError("memory-budget-exceeded: density matrix dimension " +
                        std::to_string(dim) + " exceeds cap " + std::to_string(dim_cap));
  Eigen::VectorXcd v(dim);
  const int d = state.cutoff().dim();
  for (int na = 0; na < d; ++na)
    for (int nb = 0; nb < d; ++nb) v(na * d + nb) = state.amplitude(na, nb);
  DensityMatrix rho;
  rho.n_max = state.n_max();
  rho.entries = v * v.adjoint();
  return rho;
}

DensityMatrix partial_transpose(const DensityMatrix& rho) {
  const int d = rho.n_max + 1;
  DensityMatrix out;
  out.n_max = rho.n_max;
  out.entries.resize(rho.entries.rows(), rho.entries.cols());
  for (int m = 0; m < d; ++m)
    for (int mu = 0; mu < d; ++mu)
      for (int n = 0; n < d; ++n)
        for (int nu = 0; nu < d; ++nu)
          out.entries(m * d + mu, n * d + nu) = rho.entries(m * d + nu, n * d + mu);
  return out;
}

NegativityResult log_negativity(const TwoModeState& state, NegativityMethod method, int dim_cap) {
  NegativityResult result;
  result.cutoff_used = state.n_max();
  switch (method) {
    case NegativityMethod::schmidt:
      result.negativity = schmidt_negativity(state);
      result.method = NegativityMethod::schmidt;
      break;
    case NegativityMethod::eigensolve:
      result.negativity = eigensolve_negativity(state, dim_cap);
      result.method = NegativityMethod::eigensolve;
      break;
    case NegativityMethod::both: {
      const double ns = schmidt_negativity(state);
      const double ne = eigensolve_negativity(state, dim_cap);
      if (std::abs(e_n_from_negativity(ns) - e_n_from_negativity(ne)) > 1e-8)
        throw NumericalError("log_negativity: schmidt and eigensolve paths disagree (" +
                             std::to_string(ns) + " vs " + std::to_string(ne) + ")");
      result.negativity = ne;
      result.method = NegativityMethod::eigensolve;
      break;
    }
  }
  result.e_n = e_n_from_negativity(result.negativity);
  return result;
}

SweepSeries negativity_sweep(const FamilySpec& family, const std::vector<double>& kappas,
                             const SweepOptions& options) {
  if (kappas.empty()) throw ConfigError("negativity_sweep: empty kappa list");
  for (double k : kappas)
    if (!(k >= 0.0) || !std::isfinite(k))
      throw ConfigError("negativity_sweep: kappa values must be finite and >= 0");

  // Resolve one cutoff at the maximum-mixing point and reuse it everywhere.
  // Per-point tail checks still run inside the builders; if any interior
  // kappa needs more room the whole sweep restarts at the doubled cutoff, so
  // one cutoff covers the series.
  int n_max = options.n_max;
  if (n_max <= 0) {
    const WaveguideParams wg = WaveguideParams::from_kappa(kMixingKappa, options.coupling_c);
    const AdaptiveCutoff adaptive{options.tail_tolerance, options.cutoff_cap};
    if (std::holds_alternative<PsVortexSpec>(family)) {
      const auto& ps = std::get<PsVortexSpec>(family);
      n_max = evolved_ps_vortex(ps.squeeze, ps.k, wg, adaptive).n_max();
    } else {
      n_max = evolved_bs_vortex(std::get<BsVortexParams>(family), wg, adaptive).n_max();
    }
  }

  SweepSeries series;
  series.method = "schmidt";
  if (std::holds_alternative<PsVortexSpec>(family)) {
    const auto& ps = std::get<PsVortexSpec>(family);
    series.family = "ps_vortex";
    series.params = {{"r", ps.squeeze.r}, {"phi", ps.squeeze.phi}, {"k", double(ps.k)}};
  } else {
    const auto& bs = std::get<BsVortexParams>(family);
    series.family = "bs_vortex";
    series.params = {{"r_x", bs.r_x},     {"r_y", bs.r_y}, {"eta_x", bs.eta_x},
                     {"eta_y", bs.eta_y}, {"phi", bs.phi}, {"k", double(bs.k)}};
  }

  series.points.resize(kappas.size());
  for (;; n_max *= 2) {
    if (n_max > options.cutoff_cap && options.n_max <= 0)
      throw NumericalError("negativity_sweep: cutoff cap " + std::to_string(options.cutoff_cap) +
                           " too small for the requested kappa range");
    const FockCutoff cutoff{n_max, options.tail_tolerance};
    try {
      // One eigendecomposition of the coupler and one t = 0 Gaussian table
      // serve every sweep point.
      const detail::CouplerRotor rotor(n_max, options.threads);
      AmplitudeMatrix base;
      if (std::holds_alternative<PsVortexSpec>(family))
        base = detail::tmsv_table(std::get<PsVortexSpec>(family).squeeze, n_max);
      else
        base = detail::squeezed_product_table(std::get<BsVortexParams>(family), n_max);

      parallel_for(int(kappas.size()), options.threads, [&](int i) {
        const WaveguideParams wg = WaveguideParams::from_kappa(kappas[i], options.coupling_c);
        const double theta = wg.theta();
        AmplitudeMatrix table = rotor.apply(base, theta);
        double tail;
        if (std::holds_alternative<PsVortexSpec>(family)) {
          const auto& ps = std::get<PsVortexSpec>(family);
          tail = ps_vortex_sector_tail(ps.squeeze.r, ps.k, n_max);
          table = detail::apply_ps_polynomial(table, ps.k, theta);
        } else {
          table = detail::apply_bs_polynomial(table, std::get<BsVortexParams>(family), theta);
          tail = shell_tail_estimate(table);
        }
        if (tail > cutoff.tail_tolerance)
          throw NumericalError("cutoff-too-small in sweep at kappa=" + std::to_string(kappas[i]));
        const double norm = table.norm();
        if (norm < kZeroThreshold) throw NumericalError("sweep state vanished");
        const TwoModeState state(table / norm, cutoff, tail);
        series.points[i] = {kappas[i], log_negativity(state, NegativityMethod::schmidt).e_n};
      });
    } catch (const NumericalError&) {
      if (options.n_max > 0) throw;  // caller pinned the cutoff
      continue;
    }
    series.cutoff_used = n_max;

    if (options.validate_endpoints) {
      validate_routes(family, kappas.front(), options, cutoff);
      if (kappas.size() > 1) validate_routes(family, kappas.back(), options, cutoff);
    }
    for (double k : options.validate_interior) validate_routes(family, k, options, cutoff);
    return series;
  }
}

SweepSummary summarize_sweep(const SweepSeries& series) {
  SweepSummary summary;
  const auto& pts = series.points;
  if (pts.empty()) return summary;

  auto [min_it, max_it] = std::minmax_element(
      pts.begin(), pts.end(), [](const SweepPoint& a, const SweepPoint& b) { return a.e_n < b.e_n; });
  summary.min_value = min_it->e_n;
  summary.max_value = max_it->e_n;
  summary.argmin = min_it->kappa;
  summary.argmax = max_it->kappa;

  if (pts.size() < 3) return summary;
  const double step = pts[1].kappa - pts[0].kappa;
  bool uniform = step > 0.0;
  for (size_t i = 1; uniform && i + 1 < pts.size(); ++i)
    uniform = std::abs((pts[i + 1].kappa - pts[i].kappa) - step) < 1e-9 * std::max(1.0, step);

  if (uniform) {
    const double span = summary.max_value - summary.min_value;
    const double tol =
        std::max({1e-8, 1e-3 * span, 1e-7 * std::abs(summary.max_value)});
    summary.period_tolerance = tol;
    const int n = int(pts.size());
    for (int shift = 1; shift <= n / 2; ++shift) {
      double dev = 0.0;
      for (int i = 0; i + shift < n; ++i)
        dev = std::max(dev, std::abs(pts[i + shift].e_n - pts[i].e_n));
      if (dev <= tol) {
        summary.fundamental_period = shift * step;
        break;
      }
    }
    // Deviation at the shift closest to Delta kappa = 2, when representable.
    const double target = 2.0 / step;
    const int shift2 = int(std::lround(target));
    if (shift2 >= 1 && shift2 < n && std::abs(shift2 - target) < 1e-6) {
      double dev = 0.0;
      for (int i = 0; i + shift2 < n; ++i)
        dev = std::max(dev, std::abs(pts[i + shift2].e_n - pts[i].e_n));
      summary.deviation_at_two = dev;
    } else {
      summary.deviation_at_two = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return summary;
}

}  // namespace vortexprop
