#pragma once

#include <Eigen/Dense>
#include <complex>

namespace vortexprop::detail {

// Fock amplitudes of the (unnormalized) pure Gaussian state
//   exp( b11/2 a'^2 + b12 a'b' + b22/2 b'^2 ) |0,0>,   a' = a-dagger etc.,
// seeded G(0,0) = 1. Filled by the annihilator recursions
//   sqrt(m) G(m,n) = b11 sqrt(m-1) G(m-2,n) + b12 sqrt(n) G(m-1,n-1)
//   sqrt(n) G(0,n) = b22 sqrt(n-1) G(0,n-2)
// which are stable while the quadratic form has spectral norm < 1.
Eigen::MatrixXcd gaussian_pair_amplitudes(std::complex<double> b11, std::complex<double> b12,
                                          std::complex<double> b22, int n_max);

// The same quadratic form after conjugation by the two-mode coupler
// exp(-i theta (a'b + ab')): creation operators map by the symmetric unitary
// M = [[cos, -i sin], [-i sin, cos]], so B -> M B M.
struct QuadraticForm {
  std::complex<double> b11, b12, b22;
};

QuadraticForm coupler_transformed_form(const QuadraticForm& form, double theta);

}  // namespace vortexprop::detail
