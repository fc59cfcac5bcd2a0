#include "vortexprop/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "vortexprop/parallel.hpp"

namespace vortexprop {

namespace {

constexpr double kContourAmplitudeFloor = 1e-8;
// 4 |alpha|^2 beyond which the Laguerre growth regime would overflow.
constexpr double kKernelArgumentLimit = 600.0;

bool depends_on(AxisLabel label, AxisLabel u, AxisLabel v) { return label == u || label == v; }

}  // namespace

std::string to_string(AxisLabel label) {
  switch (label) {
    case AxisLabel::x: return "x";
    case AxisLabel::y: return "y";
    case AxisLabel::p_x: return "p_x";
    case AxisLabel::p_y: return "p_y";
  }
  return "?";
}

AxisLabel parse_axis_label(const std::string& text) {
  if (text == "x") return AxisLabel::x;
  if (text == "y") return AxisLabel::y;
  if (text == "p_x" || text == "px") return AxisLabel::p_x;
  if (text == "p_y" || text == "py") return AxisLabel::p_y;
  throw ConfigError("unknown axis label '" + text + "' (expected x, y, p_x or p_y)");
}

void AxisRange::validate() const {
  if (count < 2) throw ConfigError("axis needs at least 2 samples");
  if (!(min < max)) throw ConfigError("axis range requires min < max");
}

void Grid2D::validate() const {
  axis_u.validate();
  axis_v.validate();
  if (label_u == label_v) throw ConfigError("grid axes must carry distinct labels");
}

double& Point4::coord(AxisLabel label) {
  switch (label) {
    case AxisLabel::x: return x;
    case AxisLabel::y: return y;
    case AxisLabel::p_x: return p_x;
    case AxisLabel::p_y: return p_y;
  }
  return x;
}

double Point4::coord(AxisLabel label) const { return const_cast<Point4*>(this)->coord(label); }

void SliceSpec::validate() const {
  bool seen[4] = {false, false, false, false};
  auto mark = [&](AxisLabel l) {
    if (seen[int(l)])
      throw ConfigError("slice spec uses axis label '" + to_string(l) + "' more than once");
    seen[int(l)] = true;
  };
  mark(varying_u);
  mark(varying_v);
  mark(pinned[0].first);
  mark(pinned[1].first);
}

Point4 SliceSpec::point_at(double u, double v) const {
  Point4 p;
  p.coord(varying_u) = u;
  p.coord(varying_v) = v;
  p.coord(pinned[0].first) = pinned[0].second;
  p.coord(pinned[1].first) = pinned[1].second;
  return p;
}

namespace detail {

Eigen::VectorXd hermite_functions(double x, int n_max) {
  Eigen::VectorXd phi(n_max + 1);
  phi(0) = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (n_max >= 1) phi(1) = std::sqrt(2.0) * x * phi(0);
  for (int n = 2; n <= n_max; ++n)
    phi(n) = x * std::sqrt(2.0 / n) * phi(n - 1) - std::sqrt(double(n - 1) / n) * phi(n - 2);
  return phi;
}

double laguerre(int n, double a, double z) {
  if (n == 0) return 1.0;
  double lm1 = 1.0;
  double l = 1.0 + a - z;
  for (int q = 1; q < n; ++q) {
    const double next = ((2.0 * q + 1.0 + a - z) * l - (q + a) * lm1) / double(q + 1);
    lm1 = l;
    l = next;
  }
  return l;
}

Eigen::MatrixXcd parity_kernel(Complex alpha, int n_max) {
  const int dim = n_max + 1;
  const double z = 4.0 * std::norm(alpha);
  if (z > kKernelArgumentLimit)
    throw ConfigError("phase-space point too far from the origin for stable evaluation "
                      "(|alpha| <= " + std::to_string(std::sqrt(kKernelArgumentLimit) / 2.0) +
                      " supported)");

  Eigen::MatrixXcd kernel(dim, dim);
  if (z == 0.0) {
    kernel.setZero();
    for (int m = 0; m < dim; ++m) kernel(m, m) = (m % 2 == 0) ? 1.0 : -1.0;
    return kernel;
  }

  const Complex dir = 2.0 * alpha / std::abs(2.0 * alpha);
  const double log2a = std::log(std::abs(2.0 * alpha));
  Complex dir_pow = 1.0;
  for (int d = 0; d < dim; ++d) {
    // Elements K(q+d, q) = (-1)^q P(q) L_q^{(d)}(z), with the prefactor
    // P(q) = e^{-z/2} (2 alpha)^d sqrt(q! / (q+d)!) advanced by ratios.
    double log_p = -0.5 * z + d * log2a - 0.5 * std::lgamma(double(d) + 1.0);
    double p = std::exp(log_p);
    double lqm1 = 0.0, lq = 1.0;
    for (int q = 0; q + d < dim; ++q) {
      if (q > 0) {
        const double next =
            ((2.0 * (q - 1) + 1.0 + d - z) * lq - (q - 1.0 + d) * lqm1) / double(q);
        lqm1 = lq;
        lq = next;
      }
      const double sign = (q % 2 == 0) ? 1.0 : -1.0;
      const Complex value = sign * p * lq * dir_pow;
      kernel(q + d, q) = value;
      kernel(q, q + d) = std::conj(value);
      p *= std::sqrt(double(q + 1) / double(q + 1 + d));
    }
    dir_pow *= dir;
  }
  return kernel;
}

}  // namespace detail

QuadratureField quadrature_wavefunction(const TwoModeState& state, const Grid2D& grid) {
  grid.validate();
  if (grid.label_u != AxisLabel::x || grid.label_v != AxisLabel::y)
    throw ConfigError("quadrature_wavefunction expects a grid over (x, y)");

  const int n_max = state.n_max();
  Eigen::MatrixXd hu(n_max + 1, grid.axis_u.count);
  for (int i = 0; i < grid.axis_u.count; ++i)
    hu.col(i) = detail::hermite_functions(grid.axis_u.value(i), n_max);
  Eigen::MatrixXd hv(n_max + 1, grid.axis_v.count);
  for (int j = 0; j < grid.axis_v.count; ++j)
    hv.col(j) = detail::hermite_functions(grid.axis_v.value(j), n_max);

  QuadratureField field;
  field.grid = grid;
  field.values = hu.transpose() * state.amplitudes() * hv;
  return field;
}

int winding_number(const QuadratureField& field, double radius, int samples) {
  if (!(radius > 0.0)) throw ConfigError("winding_number: radius must be > 0");
  if (samples < 8) throw ConfigError("winding_number: need at least 8 samples");
  const AxisRange& ax = field.grid.axis_u;
  const AxisRange& ay = field.grid.axis_v;
  if (-radius < ax.min || radius > ax.max || -radius < ay.min || radius > ay.max)
    throw ConfigError("winding_number: circle leaves the sampled grid");

  auto interpolate = [&](double x, double y) -> Complex {
    const double fu = (x - ax.min) / (ax.max - ax.min) * (ax.count - 1);
    const double fv = (y - ay.min) / (ay.max - ay.min) * (ay.count - 1);
    const int iu = std::clamp(int(std::floor(fu)), 0, ax.count - 2);
    const int iv = std::clamp(int(std::floor(fv)), 0, ay.count - 2);
    const double tu = fu - iu, tv = fv - iv;
    return (1 - tu) * (1 - tv) * field.values(iu, iv) + tu * (1 - tv) * field.values(iu + 1, iv) +
           (1 - tu) * tv * field.values(iu, iv + 1) + tu * tv * field.values(iu + 1, iv + 1);
  };

  double total = 0.0;
  double prev_phase = 0.0;
  for (int s = 0; s <= samples; ++s) {
    const double angle = 2.0 * std::numbers::pi * double(s) / samples;
    const Complex value = interpolate(radius * std::cos(angle), radius * std::sin(angle));
    if (std::abs(value) < kContourAmplitudeFloor)
      throw NumericalError("amplitude-too-small-on-contour: |Psi| < 1e-8 on the circle; "
                           "the vortex core intersects the contour");
    const double phase = std::arg(value);
    if (s > 0) {
      double delta = phase - prev_phase;
      while (delta > std::numbers::pi) delta -= 2.0 * std::numbers::pi;
      while (delta < -std::numbers::pi) delta += 2.0 * std::numbers::pi;
      total += delta;
    }
    prev_phase = phase;
  }
  return int(std::lround(total / (2.0 * std::numbers::pi)));
}

namespace {

// W = (4/pi^2) Tr[ C^H K_A C K_B^T ], grouped so each distinct kernel is
// built once and each distinct "pivot" kernel triggers one pair of matrix
// products.
struct SliceEvaluator {
  const AmplitudeMatrix& table;
  const SliceSpec& spec;
  const Grid2D& grid;

  bool alpha_on_u, alpha_on_v, beta_on_u, beta_on_v;

  SliceEvaluator(const TwoModeState& state, const SliceSpec& s, const Grid2D& g)
      : table(state.amplitudes()), spec(s), grid(g) {
    alpha_on_u = depends_on(spec.varying_u, AxisLabel::x, AxisLabel::p_x);
    alpha_on_v = depends_on(spec.varying_v, AxisLabel::x, AxisLabel::p_x);
    beta_on_u = depends_on(spec.varying_u, AxisLabel::y, AxisLabel::p_y);
    beta_on_v = depends_on(spec.varying_v, AxisLabel::y, AxisLabel::p_y);
  }

  std::pair<Complex, Complex> coherent_pair(int i, int j) const {
    const Point4 p = spec.point_at(grid.axis_u.value(i), grid.axis_v.value(j));
    return {coherent_alpha(p.x, p.p_x), coherent_alpha(p.y, p.p_y)};
  }
};

}  // namespace

WignerSlice wigner_slice(const TwoModeState& state, const SliceSpec& spec, const Grid2D& grid,
                         int threads) {
  spec.validate();
  grid.validate();
  if (grid.label_u != spec.varying_u || grid.label_v != spec.varying_v)
    throw ConfigError("wigner_slice: grid labels must match the slice's varying axes");

  const SliceEvaluator ev(state, spec, grid);
  const int nu = grid.axis_u.count, nv = grid.axis_v.count;
  const int n_max = state.n_max();
  const int dim = n_max + 1;
  const double prefactor = wigner_peak();

  WignerSlice out;
  out.slice = spec;
  out.grid = grid;
  out.values.resize(nu, nv);

  // Pivot on the mode whose kernel varies along fewer axes, so the expensive
  // sandwich products amortize across a full row or column. For the pivot
  // kernel K_P and the other kernel K_O the point value is
  // (4/pi^2) Re sum( (C^H K_A C) o K_B ), independent of which mode pivots
  // (both sandwiches are Hermitian).
  const int alpha_axes = int(ev.alpha_on_u) + int(ev.alpha_on_v);
  const int beta_axes = int(ev.beta_on_u) + int(ev.beta_on_v);
  const bool pivot_alpha = alpha_axes <= beta_axes;
  const bool pivot_on_u = pivot_alpha ? ev.alpha_on_u : ev.beta_on_u;
  const bool pivot_on_v = pivot_alpha ? ev.alpha_on_v : ev.beta_on_v;
  const bool other_on_u = pivot_alpha ? ev.beta_on_u : ev.alpha_on_u;
  const bool other_on_v = pivot_alpha ? ev.beta_on_v : ev.alpha_on_v;

  // Precompute the non-pivot kernels when they follow a single axis and fit
  // in a sane memory budget; otherwise they are rebuilt per point.
  const int other_count = (other_on_u && !other_on_v) ? nu : (other_on_v && !other_on_u ? nv : 1);
  const bool other_separable = !(other_on_u && other_on_v);
  const bool cache_others =
      other_separable && double(other_count) * dim * dim * 16.0 < 512.0 * 1024 * 1024;
  std::vector<Eigen::MatrixXcd> other_kernels;
  if (cache_others) {
    other_kernels.resize(other_count);
    parallel_for(other_count, threads, [&](int idx) {
      const int i = (other_on_u && !other_on_v) ? idx : 0;
      const int j = (other_on_v && !other_on_u) ? idx : 0;
      auto [alpha, beta] = ev.coherent_pair(i, j);
      other_kernels[idx] = detail::parity_kernel(pivot_alpha ? beta : alpha, n_max);
    });
  }

  const bool pivot_per_point = pivot_on_u && pivot_on_v;
  const int groups = pivot_on_u ? nu : (pivot_on_v ? nv : 1);
  parallel_for(groups, threads, [&](int g) {
    Eigen::MatrixXcd sandwich;
    bool have_sandwich = false;
    Eigen::MatrixXcd k_other_local;

    auto eval_point = [&](int i, int j) {
      auto [alpha, beta] = ev.coherent_pair(i, j);
      if (!have_sandwich || pivot_per_point) {
        const Eigen::MatrixXcd k_pivot =
            detail::parity_kernel(pivot_alpha ? alpha : beta, n_max);
        sandwich = pivot_alpha
                       ? Eigen::MatrixXcd(ev.table.adjoint() * k_pivot * ev.table)
                       : Eigen::MatrixXcd(ev.table * k_pivot.transpose() * ev.table.adjoint());
        have_sandwich = true;
      }
      const Eigen::MatrixXcd* k_other;
      if (cache_others) {
        const int idx = (other_on_u && !other_on_v) ? i : (other_on_v && !other_on_u ? j : 0);
        k_other = &other_kernels[idx];
      } else {
        k_other_local = detail::parity_kernel(pivot_alpha ? beta : alpha, n_max);
        k_other = &k_other_local;
      }
      out.values(i, j) = prefactor * (sandwich.cwiseProduct(*k_other)).sum().real();
    };

    if (pivot_on_u) {
      for (int j = 0; j < nv; ++j) eval_point(g, j);
    } else if (pivot_on_v) {
      for (int i = 0; i < nu; ++i) eval_point(i, g);
    } else {
      for (int i = 0; i < nu; ++i)
        for (int j = 0; j < nv; ++j) eval_point(i, j);
    }
  });

  return out;
}

std::function<double(const Point4&)> wigner_sampler(const TwoModeState& state) {
  auto shared = std::make_shared<TwoModeState>(state);
  return [shared](const Point4& p) {
    const Complex alpha = coherent_alpha(p.x, p.p_x);
    const Complex beta = coherent_alpha(p.y, p.p_y);
    const int n_max = shared->n_max();
    const Eigen::MatrixXcd ka = detail::parity_kernel(alpha, n_max);
    const Eigen::MatrixXcd kb = detail::parity_kernel(beta, n_max);
    const Eigen::MatrixXcd sandwich = shared->amplitudes().adjoint() * ka * shared->amplitudes();
    return wigner_peak() * (sandwich.cwiseProduct(kb)).sum().real();
  };
}

Eigen::VectorXd wigner_ps_closed_form(const SqueezeParams& params, int k,
                                      std::span<const Point4> points) {
  params.validate();
  if (k < 0) throw ConfigError("wigner_ps_closed_form: k must be >= 0");
  const double ch = std::cosh(params.r);
  const Complex sh = std::sinh(params.r) * std::polar(1.0, params.phi);
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;

  Eigen::VectorXd values(points.size());
  for (size_t idx = 0; idx < points.size(); ++idx) {
    const Complex alpha = coherent_alpha(points[idx].x, points[idx].p_x);
    const Complex beta_conj = std::conj(coherent_alpha(points[idx].y, points[idx].p_y));
    const Complex at = ch * alpha - sh * beta_conj;
    const Complex bt_conj = -sh * alpha + ch * beta_conj;
    const double a2 = std::norm(at), b2 = std::norm(bt_conj);
    values(idx) =
        wigner_peak() * sign * detail::laguerre(k, 0.0, 4.0 * a2) * std::exp(-2.0 * (a2 + b2));
  }
  return values;
}

Eigen::VectorXd wigner_bs_closed_form(const BsVortexParams& params,
                                      std::span<const Point4> points) {
  params.validate();
  const int m = params.k;
  const double sx = params.sigma_x(), sy = params.sigma_y();
  const double s2 = sx * sx + sy * sy;
  const double kfac = std::tgamma(double(m) + 1.0);
  const double coeff = std::pow(2.0, double(m) - 4.0) * kfac /
                       (std::pow(std::numbers::pi, 1.5) * std::tgamma(double(m) + 0.5)) *
                       std::pow(-2.0 * s2, double(m));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  Eigen::VectorXd values(points.size());
  for (size_t idx = 0; idx < points.size(); ++idx) {
    const Point4& p = points[idx];
    const double x1 = p.x / sx, y1 = p.y / sy;
    const double x2 = sy * p.x / (2.0 * sx), y2 = sx * p.y / (2.0 * sy);
    const double px1 = sx * p.p_x * inv_sqrt2, py1 = sy * p.p_y * inv_sqrt2;
    const double px2 = sy * sy * sy * p.p_x * inv_sqrt2;
    const double py2 = sx * sx * sx * p.p_y * inv_sqrt2;
    const double arg = std::pow(px2 + py2 - x2 - y2, 2) / s2;
    values(idx) = coeff * std::exp(-(x1 * x1 + y1 * y1 + px1 * px1 + py1 * py1)) *
                  detail::laguerre(m, -0.5, arg);
  }
  return values;
}

WignerSlice transport_wigner(const std::function<double(const Point4&)>& initial,
                             const WaveguideParams& wg, const SliceSpec& spec, const Grid2D& grid,
                             int threads) {
  spec.validate();
  grid.validate();
  if (grid.label_u != spec.varying_u || grid.label_v != spec.varying_v)
    throw ConfigError("transport_wigner: grid labels must match the slice's varying axes");
  wg.validate();

  const double theta = wg.theta();
  const double c = std::cos(theta), s = std::sin(theta);

  WignerSlice out;
  out.slice = spec;
  out.grid = grid;
  out.values.resize(grid.axis_u.count, grid.axis_v.count);

  parallel_for(grid.axis_u.count, threads, [&](int i) {
    for (int j = 0; j < grid.axis_v.count; ++j) {
      const Point4 p = spec.point_at(grid.axis_u.value(i), grid.axis_v.value(j));
      const Complex alpha = coherent_alpha(p.x, p.p_x);
      const Complex beta = coherent_alpha(p.y, p.p_y);
      // Inverse classical flow of the coupler.
      const Complex a0 = alpha * c + Complex(0.0, 1.0) * beta * s;
      const Complex b0 = beta * c + Complex(0.0, 1.0) * alpha * s;
      Point4 q;
      q.x = a0.real();
      q.p_x = -a0.imag();
      q.y = b0.real();
      q.p_y = -b0.imag();
      out.values(i, j) = initial(q);
    }
  });
  return out;
}

}  // namespace vortexprop
