#include "vortexprop/detail/gaussian.hpp"

#include <cmath>

namespace vortexprop::detail {

Eigen::MatrixXcd gaussian_pair_amplitudes(std::complex<double> b11, std::complex<double> b12,
                                          std::complex<double> b22, int n_max) {
  const int dim = n_max + 1;
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(dim, dim);
  g(0, 0) = 1.0;
  for (int n = 2; n < dim; ++n)
    g(0, n) = b22 * std::sqrt(double(n - 1) / double(n)) * g(0, n - 2);
  for (int m = 1; m < dim; ++m) {
    const double inv = 1.0 / std::sqrt(double(m));
    for (int n = 0; n < dim; ++n) {
      std::complex<double> acc = 0.0;
      if (m >= 2) acc += b11 * std::sqrt(double(m - 1)) * g(m - 2, n);
      if (n >= 1) acc += b12 * std::sqrt(double(n)) * g(m - 1, n - 1);
      g(m, n) = acc * inv;
    }
  }
  return g;
}

QuadraticForm coupler_transformed_form(const QuadraticForm& form, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const std::complex<double> is(0.0, s);
  // M B M with M = [[c, -is], [-is, c]].
  QuadraticForm out;
  out.b11 = c * c * form.b11 - 2.0 * c * is * form.b12 - s * s * form.b22;
  out.b22 = c * c * form.b22 - 2.0 * c * is * form.b12 - s * s * form.b11;
  out.b12 = c * c * form.b12 - c * is * (form.b11 + form.b22) - s * s * form.b12;
  return out;
}

}  // namespace vortexprop::detail
