#include "vortexprop/fock.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace vortexprop {

void FockCutoff::validate() const {
  if (n_max < 0) throw ConfigError("FockCutoff: n_max must be >= 0");
  if (!(tail_tolerance >= 0.0 && tail_tolerance < 1.0))
    throw ConfigError("FockCutoff: tail_tolerance must lie in [0, 1)");
}

TwoModeState::TwoModeState(AmplitudeMatrix amplitudes, FockCutoff cutoff, double tail_estimate)
    : amplitudes_(std::move(amplitudes)), cutoff_(cutoff), tail_estimate_(tail_estimate) {
  cutoff_.validate();
  if (amplitudes_.rows() != cutoff_.dim() || amplitudes_.cols() != cutoff_.dim())
    throw ConfigError("TwoModeState: amplitude table does not match cutoff dimension");
}

TwoModeState make_basis_state(int n_a, int n_b, FockCutoff cutoff) {
  cutoff.validate();
  if (n_a < 0 || n_b < 0 || n_a > cutoff.n_max || n_b > cutoff.n_max)
    throw NumericalError("index-out-of-cutoff: basis state (" + std::to_string(n_a) + ", " +
                         std::to_string(n_b) + ") exceeds n_max=" + std::to_string(cutoff.n_max));
  AmplitudeMatrix amps = AmplitudeMatrix::Zero(cutoff.dim(), cutoff.dim());
  amps(n_a, n_b) = 1.0;
  return TwoModeState(std::move(amps), cutoff);
}

TwoModeState apply_ladder(const TwoModeState& state, Mode mode, Ladder direction) {
  const int dim = state.cutoff().dim();
  const AmplitudeMatrix& in = state.amplitudes();
  AmplitudeMatrix out = AmplitudeMatrix::Zero(dim, dim);
  double dropped = 0.0;

  // Lower: c(n, m) feeds (n-1, m) with weight sqrt(n). Raise: c(n, m) feeds
  // (n+1, m) with weight sqrt(n+1); the top row has nowhere to go.
  if (mode == Mode::a) {
    if (direction == Ladder::lower) {
      for (int n = 1; n < dim; ++n) out.row(n - 1) += std::sqrt(double(n)) * in.row(n);
    } else {
      for (int n = 0; n + 1 < dim; ++n) out.row(n + 1) += std::sqrt(double(n + 1)) * in.row(n);
      dropped = double(dim) * in.row(dim - 1).squaredNorm();
    }
  } else {
    if (direction == Ladder::lower) {
      for (int n = 1; n < dim; ++n) out.col(n - 1) += std::sqrt(double(n)) * in.col(n);
    } else {
      for (int n = 0; n + 1 < dim; ++n) out.col(n + 1) += std::sqrt(double(n + 1)) * in.col(n);
      dropped = double(dim) * in.col(dim - 1).squaredNorm();
    }
  }

  const double kept = out.squaredNorm();
  double tail = state.tail_estimate();
  if (dropped > 0.0 && kept + dropped > 0.0) tail += dropped / (kept + dropped);
  return TwoModeState(std::move(out), state.cutoff(), tail);
}

std::pair<TwoModeState, double> normalize(const TwoModeState& state) {
  const double n = state.norm();
  if (n < kZeroThreshold) throw NumericalError("zero-norm state cannot be normalized");
  return {TwoModeState(state.amplitudes() / n, state.cutoff(), state.tail_estimate()), n};
}

SchmidtSpectrum schmidt_coefficients(const TwoModeState& state) {
  const AmplitudeMatrix& amps = state.amplitudes();
  Eigen::VectorXd sv;
  if (amps.rows() <= 64) {
    sv = Eigen::JacobiSVD<AmplitudeMatrix>(amps).singularValues();
  } else if (amps.rows() <= 256) {
    sv = Eigen::BDCSVD<AmplitudeMatrix>(amps).singularValues();
  } else {
    // Large tables: eigenvalues of C^H C. Costs half the digits on the tiny
    // singular values, which is irrelevant for the sums consumed downstream.
    Eigen::MatrixXcd gram = amps.adjoint() * amps;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
    sv = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().reverse();
  }
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) < kZeroThreshold) sv(i) = 0.0;
  return SchmidtSpectrum{std::move(sv)};
}

double shell_tail_estimate(const AmplitudeMatrix& amplitudes) {
  const int dim = int(amplitudes.rows());
  if (dim < 3) return 0.0;
  const double total = amplitudes.squaredNorm();
  if (total <= 0.0) return 0.0;
  double shell = amplitudes.bottomRows(2).squaredNorm() + amplitudes.rightCols(2).squaredNorm() -
                 amplitudes.bottomRightCorner(2, 2).squaredNorm();
  return shell / total;
}

}  // namespace vortexprop
