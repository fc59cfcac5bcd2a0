#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "vortexprop/evolution.hpp"
#include "vortexprop/fock.hpp"
#include "vortexprop/state_factory.hpp"

namespace vortexprop {

// Dense eigensolves above this composite dimension are refused; the Schmidt
// path has no such cap.
inline constexpr int kDefaultDimensionCap = 4096;

// PT eigenvalues inside (-floor, 0] count as zero when summing negativity.
inline constexpr double kEigenvalueFloor = 1e-12;

// Hermitian matrix over the composite basis |n_a, n_b><n_a', n_b'|.
struct DensityMatrix {
  Eigen::MatrixXcd entries;
  int n_max = 0;

  int index(int n_a, int n_b) const { return n_a * (n_max + 1) + n_b; }
  int dim() const { return (n_max + 1) * (n_max + 1); }
};

DensityMatrix density_matrix(const TwoModeState& state, int dim_cap = kDefaultDimensionCap);

// Transposition on mode b: (m, mu; n, nu) <- (m, nu; n, mu). Involution,
// trace- and Hermiticity-preserving.
DensityMatrix partial_transpose(const DensityMatrix& rho);

enum class NegativityMethod { schmidt, eigensolve, both };

struct NegativityResult {
  double e_n = 0.0;        // log2(1 + 2 N), base-2 logarithmic negativity
  double negativity = 0.0; // magnitude of the summed negative PT eigenvalues
  NegativityMethod method = NegativityMethod::schmidt;
  int cutoff_used = 0;
};

// schmidt: N = ((sum s_i)^2 - 1)/2 from the Schmidt coefficients (pure states).
// eigensolve: full spectrum of the partial transpose. both: run both, check
// agreement to 1e-8, report the eigensolve numbers.
NegativityResult log_negativity(const TwoModeState& state,
                                NegativityMethod method = NegativityMethod::schmidt,
                                int dim_cap = kDefaultDimensionCap);

struct PsVortexSpec {
  SqueezeParams squeeze;
  int k = 1;
};

using FamilySpec = std::variant<PsVortexSpec, BsVortexParams>;

struct SweepOptions {
  double coupling_c = kDefaultCoupling;
  double tail_tolerance = 1e-8;
  int cutoff_cap = kDefaultCutoffCap;
  int n_max = -1;  // -1: resolve adaptively once, reuse for every point
  int threads = 0;
  // Cross-check the closed-form route against the generic block unitary at
  // the first and last kappa, and optionally at extra interior points.
  bool validate_endpoints = true;
  std::vector<double> validate_interior;
};

struct SweepPoint {
  double kappa;
  double e_n;
};

struct SweepSeries {
  std::string family;
  std::map<std::string, double> params;
  std::vector<SweepPoint> points;
  int cutoff_used = 0;
  std::string method;
};

SweepSeries negativity_sweep(const FamilySpec& family, const std::vector<double>& kappas,
                             const SweepOptions& options = {});

struct SweepSummary {
  double min_value = 0.0, max_value = 0.0;
  double argmin = 0.0, argmax = 0.0;
  // Smallest shift (a multiple of the sample step) under which the series is
  // invariant; 0 when none is found within half the range.
  double fundamental_period = 0.0;
  double period_tolerance = 0.0;
  // Largest |E(kappa) - E(kappa + 2)| over the sampled overlap.
  double deviation_at_two = 0.0;
};

SweepSummary summarize_sweep(const SweepSeries& series);

}  // namespace vortexprop
