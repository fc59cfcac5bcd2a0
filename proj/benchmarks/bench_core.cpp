#include <benchmark/benchmark.h>

#include "vortexprop/detail/gaussian.hpp"
#include "vortexprop/entanglement.hpp"
#include "vortexprop/evolution.hpp"
#include "vortexprop/phase_space.hpp"

using namespace vortexprop;

namespace {

void BM_CouplerRotorBuild(benchmark::State& state) {
  const int n_max = int(state.range(0));
  for (auto _ : state) {
    detail::CouplerRotor rotor(n_max);
    benchmark::DoNotOptimize(rotor.n_max());
  }
  state.SetComplexityN(n_max);
}
BENCHMARK(BM_CouplerRotorBuild)->Arg(32)->Arg(64)->Arg(128)->Arg(256)->Complexity();

void BM_CouplerRotorApply(benchmark::State& state) {
  const int n_max = int(state.range(0));
  const detail::CouplerRotor rotor(n_max);
  const AmplitudeMatrix table = detail::tmsv_table(SqueezeParams{1.0, 0.0}, n_max);
  for (auto _ : state) {
    auto out = rotor.apply(table, 0.77);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(n_max);
}
BENCHMARK(BM_CouplerRotorApply)->Arg(32)->Arg(64)->Arg(128)->Arg(256)->Arg(512)->Complexity();

void BM_GaussianRecursion(benchmark::State& state) {
  const int n_max = int(state.range(0));
  const double q = std::tanh(0.8);
  for (auto _ : state) {
    auto table = detail::gaussian_pair_amplitudes(q, 0.0, 0.8 * q, n_max);
    benchmark::DoNotOptimize(table.data());
  }
}
BENCHMARK(BM_GaussianRecursion)->Arg(64)->Arg(256)->Arg(512);

void BM_SchmidtSpectrum(benchmark::State& state) {
  const int n_max = int(state.range(0));
  auto vortex = make_bs_vortex(BsVortexParams{0.2, 0.3, 1.0, 0.75, 2, 0.0},
                               FockCutoff{n_max, 0.99});
  for (auto _ : state) {
    auto spectrum = schmidt_coefficients(vortex);
    benchmark::DoNotOptimize(spectrum.coefficients.data());
  }
}
BENCHMARK(BM_SchmidtSpectrum)->Arg(64)->Arg(128)->Arg(256)->Arg(512);

void BM_SweepPoint(benchmark::State& state) {
  const int n_max = int(state.range(0));
  const detail::CouplerRotor rotor(n_max);
  const AmplitudeMatrix base = detail::tmsv_table(SqueezeParams{1.0, 0.0}, n_max);
  for (auto _ : state) {
    AmplitudeMatrix table = rotor.apply(base, 1.13);
    table = detail::apply_ps_polynomial(table, 2, 1.13);
    table /= table.norm();
    const TwoModeState point(table, FockCutoff{n_max, 0.99});
    benchmark::DoNotOptimize(log_negativity(point, NegativityMethod::schmidt).e_n);
  }
}
BENCHMARK(BM_SweepPoint)->Arg(64)->Arg(128)->Arg(256);

void BM_HermiteTable(benchmark::State& state) {
  const int n_max = int(state.range(0));
  for (auto _ : state) {
    auto phi = detail::hermite_functions(1.37, n_max);
    benchmark::DoNotOptimize(phi.data());
  }
}
BENCHMARK(BM_HermiteTable)->Arg(64)->Arg(256);

void BM_ParityKernel(benchmark::State& state) {
  const int n_max = int(state.range(0));
  const Complex alpha(1.1, -0.6);
  for (auto _ : state) {
    auto kernel = detail::parity_kernel(alpha, n_max);
    benchmark::DoNotOptimize(kernel.data());
  }
}
BENCHMARK(BM_ParityKernel)->Arg(32)->Arg(128)->Arg(256);

void BM_WignerSlicePoint(benchmark::State& state) {
  const int n_max = int(state.range(0));
  auto vortex = make_ps_vortex(SqueezeParams{0.5, 0.0}, 1, FockCutoff{n_max, 0.99});
  auto sampler = wigner_sampler(vortex);
  const Point4 point{0.7, -0.2, 0.4, 0.1};
  for (auto _ : state) benchmark::DoNotOptimize(sampler(point));
}
BENCHMARK(BM_WignerSlicePoint)->Arg(16)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
