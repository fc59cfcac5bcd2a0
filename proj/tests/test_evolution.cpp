#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "vortexprop/detail/gaussian.hpp"
#include "vortexprop/evolution.hpp"

using namespace vortexprop;

namespace {

double aligned_max_norm_diff(const TwoModeState& a, const TwoModeState& b) {
  // global-phase alignment on the largest amplitude
  int imax = 0, jmax = 0;
  a.amplitudes().cwiseAbs().maxCoeff(&imax, &jmax);
  const Complex phase = b.amplitude(imax, jmax) / a.amplitude(imax, jmax);
  return (a.amplitudes() * (phase / std::abs(phase)) - b.amplitudes()).cwiseAbs().maxCoeff();
}

double fidelity(const TwoModeState& a, const TwoModeState& b) {
  return std::abs((a.amplitudes().conjugate().cwiseProduct(b.amplitudes())).sum());
}

}  // namespace

TEST_CASE("waveguide parameters") {
  auto wg = WaveguideParams::from_time(2e10, 1e-6);
  CHECK(wg.kappa == doctest::Approx(2e10 * 1e-6 / std::numbers::pi));
  auto back = WaveguideParams::from_kappa(wg.kappa, 2e10);
  CHECK(back.time_t == doctest::Approx(1e-6));
  CHECK_THROWS_AS(WaveguideParams::from_kappa(-0.1), ConfigError);
  CHECK_THROWS_AS(WaveguideParams::from_time(0.0, 1.0), ConfigError);

  // argument reduction keeps large sweeps accurate
  auto large = WaveguideParams::from_kappa(6366.0 + 0.25);
  CHECK(large.theta() == doctest::Approx(0.25 * std::numbers::pi));
}

TEST_CASE("single-excitation block against the 2x2 oracle") {
  const FockCutoff cutoff{4, 1e-8};
  auto one = make_basis_state(1, 0, cutoff);

  auto still = evolve_state(one, WaveguideParams::from_kappa(0.0));
  CHECK((still.amplitudes() - one.amplitudes()).norm() == 0.0);

  auto swapped = evolve_state(one, WaveguideParams::from_kappa(0.5));  // Ct = pi/2
  CHECK(std::abs(swapped.amplitude(0, 1) - Complex(0, -1)) < 1e-12);
  CHECK(swapped.probabilities()(0, 1) == doctest::Approx(1.0));

  const double theta = 0.37;
  auto rotated = evolve_state(one, WaveguideParams::from_kappa(theta / std::numbers::pi));
  CHECK(std::abs(rotated.amplitude(1, 0) - std::cos(theta)) < 1e-12);
  CHECK(std::abs(rotated.amplitude(0, 1) - Complex(0, -std::sin(theta))) < 1e-12);
}

TEST_CASE("half-period phase flip") {
  const FockCutoff cutoff{6, 1e-8};
  for (auto [m, n] : {std::pair{0, 0}, {1, 0}, {2, 1}, {3, 3}}) {
    auto state = make_basis_state(m, n, cutoff);
    auto flipped = evolve_state(state, WaveguideParams::from_kappa(1.0));  // Ct = pi
    const double sign = ((m + n) % 2 == 0) ? 1.0 : -1.0;
    CHECK(std::abs(flipped.amplitude(m, n) - sign) < 1e-12);
    CHECK((flipped.probabilities() - state.probabilities()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("generic evolution against the dense kron oracle") {
  const int n_max = 6;
  const double theta = 0.7;
  const Eigen::MatrixXcd u = oracles::coupler_unitary(n_max + 1, theta);
  for (unsigned seed : {1u, 2u, 3u}) {
    auto state = oracles::random_state(n_max, seed);
    auto evolved = evolve_state(state, WaveguideParams::from_kappa(theta / std::numbers::pi));
    const Eigen::VectorXcd expected = u * oracles::vectorize(state.amplitudes());
    CHECK((oracles::vectorize(evolved.amplitudes()) - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("conservation and periodicity") {
  auto state = make_ps_vortex(SqueezeParams{0.5, 0.0}, 1, AdaptiveCutoff{1e-10, 256});

  SUBCASE("unitarity across the sweep range") {
    for (double kappa = 0.0; kappa <= 10.0; kappa += 0.5) {
      auto evolved = evolve_state(state, WaveguideParams::from_kappa(kappa));
      CHECK(std::abs(evolved.norm() - 1.0) < 1e-10);
    }
  }

  SUBCASE("total photon sector probabilities are invariant") {
    auto evolved = evolve_state(state, WaveguideParams::from_kappa(0.37));
    const int dim = state.cutoff().dim();
    for (int total = 0; total <= 2 * state.n_max(); ++total) {
      double before = 0.0, after = 0.0;
      for (int m = std::max(0, total - state.n_max()); m <= std::min(total, state.n_max());
           ++m) {
        before += std::norm(state.amplitude(m, total - m));
        after += std::norm(evolved.amplitude(m, total - m));
      }
      CHECK(std::abs(before - after) < 1e-14);
      (void)dim;
    }
  }

  SUBCASE("kappa and kappa + 2 give the same ray") {
    auto a = evolve_state(state, WaveguideParams::from_kappa(0.8));
    auto b = evolve_state(state, WaveguideParams::from_kappa(2.8));
    CHECK(std::abs(fidelity(a, b) - 1.0) < 1e-10);
  }

  SUBCASE("mode swap at kappa = 1/2") {
    auto basis = make_basis_state(2, 1, FockCutoff{4, 1e-8});
    auto swapped = evolve_state(basis, WaveguideParams::from_kappa(0.5));
    CHECK((swapped.probabilities() - basis.probabilities().transpose()).cwiseAbs().maxCoeff() <
          1e-12);
    auto family = evolve_state(state, WaveguideParams::from_kappa(0.5));
    CHECK((family.probabilities() - state.probabilities().transpose()).cwiseAbs().maxCoeff() <
          1e-8);
  }
}

TEST_CASE("closed-form routes match the generic unitary") {
  // Truncation-edge amplitudes scale like the square root of the tail mass,
  // so the 1e-8 max-norm comparison runs with tails near 1e-16.
  SUBCASE("photon-subtracted family") {
    for (int k : {1, 2, 3}) {
      for (double kappa : {0.1, 0.5, 1.3}) {
        auto wg = WaveguideParams::from_kappa(kappa);
        auto closed = evolved_ps_vortex(SqueezeParams{0.8, 0.0}, k, wg,
                                        AdaptiveCutoff{1e-16, 512});
        auto start =
            make_ps_vortex(SqueezeParams{0.8, 0.0}, k, FockCutoff{closed.n_max(), 0.99});
        auto generic = evolve_state(start, wg);
        CHECK(aligned_max_norm_diff(closed, generic) < 1e-8);
      }
    }
    // one full-squeezing spot check
    auto wg = WaveguideParams::from_kappa(0.5);
    auto closed =
        evolved_ps_vortex(SqueezeParams{1.0, 0.0}, 2, wg, AdaptiveCutoff{1e-16, 512});
    auto start = make_ps_vortex(SqueezeParams{1.0, 0.0}, 2, FockCutoff{closed.n_max(), 0.99});
    CHECK(aligned_max_norm_diff(closed, evolve_state(start, wg)) < 1e-8);
  }

  SUBCASE("beam-splitter family") {
    const BsVortexParams params{0.2, 0.4, 1.0, 0.75, 2, 0.0};
    for (double kappa : {0.1, 0.5, 1.3}) {
      auto wg = WaveguideParams::from_kappa(kappa);
      auto closed = evolved_bs_vortex(params, wg, AdaptiveCutoff{1e-16, 512});
      auto start = make_bs_vortex(params, FockCutoff{closed.n_max(), 0.99});
      auto generic = evolve_state(start, wg);
      CHECK(aligned_max_norm_diff(closed, generic) < 1e-8);
    }
  }

  SUBCASE("zero angle reproduces the constructors") {
    auto wg = WaveguideParams::from_kappa(0.0);
    auto closed = evolved_ps_vortex(SqueezeParams{0.8, 0.3}, 2, wg, AdaptiveCutoff{1e-10, 256});
    auto direct = make_ps_vortex(SqueezeParams{0.8, 0.3}, 2, FockCutoff{closed.n_max(), 0.99});
    CHECK(std::abs(fidelity(closed, direct) - 1.0) < 1e-12);

    const BsVortexParams params{0.3, 0.2, 1.0, 0.6, 1, 0.0};
    auto closed_bs = evolved_bs_vortex(params, wg, AdaptiveCutoff{1e-10, 256});
    auto direct_bs = make_bs_vortex(params, FockCutoff{closed_bs.n_max(), 0.99});
    CHECK((closed_bs.amplitudes() - direct_bs.amplitudes()).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("gaussian recursion cross-checks the rotated quadratic form") {
  // Small squeezing: the series recursion for the transformed form is stable
  // there and must agree with rotating the product table through the coupler.
  const double q = std::tanh(2.0 * 0.15);
  const double theta = 0.41;
  const int n_max = 40;
  auto form = detail::coupler_transformed_form({q, 0.0, 0.8 * q}, theta);
  Eigen::MatrixXcd series =
      detail::gaussian_pair_amplitudes(form.b11, form.b12, form.b22, n_max);
  series /= series.norm();

  Eigen::MatrixXcd product = detail::gaussian_pair_amplitudes(q, 0.0, 0.8 * q, n_max);
  const detail::CouplerRotor rotor(n_max);
  Eigen::MatrixXcd rotated = rotor.apply(product, theta);
  rotated /= rotated.norm();

  CHECK((series - rotated).cwiseAbs().maxCoeff() < 1e-10);
}
