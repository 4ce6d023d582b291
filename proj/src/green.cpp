#include <cmath>
#include <complex>
#include <stdexcept>

#include "rfwave/fourier.hpp"
#include "rfwave/green.hpp"
#include "rfwave/kernels.hpp"
#include "rfwave/rf_operator.hpp"

namespace rfwave {

namespace {

/// exp(t psi(k)) on the grid bins with real Nyquist entry.
std::vector<std::complex<double>> propagator_array(const RieszFellerParams& params,
                                                   const Grid& grid, double t) {
  auto psi = symbol_array(params, grid);
  std::vector<std::complex<double>> e(grid.N);
  for (int j = 0; j < grid.N; ++j) e[j] = std::exp(t * psi[j]);
  return e;
}

}  // namespace

GreenKernel build_green(const RieszFellerParams& params, const Grid& grid, double t,
                        double eps_mass) {
  if (!(t > 0.0)) throw std::invalid_argument("build_green: t must be > 0");
  SpectralField c(grid);
  auto e = propagator_array(params, grid, t);
  for (int j = 0; j < grid.N; ++j) c.coeff[j] = e[j];

  GreenKernel kern;
  kern.params = params;
  kern.grid = grid;
  kern.t = t;
  kern.values = to_grid(c);

  const auto& K = kernels::ops();
  const double* v = kern.values.data();
  const std::size_t n = static_cast<std::size_t>(grid.N);
  double plain = K.sum(v, n);
  kern.mass = grid.dx * (plain - 0.5 * (v[0] + v[grid.N - 1]));
  double mn = v[0];
  for (int i = 1; i < grid.N; ++i) mn = std::min(mn, v[i]);
  kern.min_value = mn;
  // Algebraic tails |x|^{-1-alpha}: extrapolating from the boundary samples,
  // the mass beyond each end is about |G(end)| * L / alpha.
  kern.tail_mass_estimate =
      (std::abs(v[0]) + std::abs(v[grid.N - 1])) * grid.L / params.alpha;
  kern.under_resolved = std::abs(kern.mass - 1.0) > eps_mass;
  return kern;
}

GridFunction semigroup_apply(const RieszFellerParams& params, double t,
                             const GridFunction& f) {
  if (t < 0.0) throw std::invalid_argument("semigroup_apply: t must be >= 0");
  SpectralField c = to_spectral(f);
  auto e = propagator_array(params, f.grid, t);
  for (int j = 0; j < f.grid.N; ++j) c.coeff[j] *= e[j];
  return to_grid(c);
}

double interp_cubic(const GridFunction& f, double x) {
  const Grid& g = f.grid;
  double off = (x + g.L) / g.dx;
  double fl = std::floor(off);
  double frac = off - fl;
  int i0 = static_cast<int>(fl) - 1;
  // 4-tap Lagrange weights at offsets {-1, 0, 1, 2} around the cell.
  double w0 = -frac * (frac - 1.0) * (frac - 2.0) / 6.0;
  double w1 = (frac + 1.0) * (frac - 1.0) * (frac - 2.0) / 2.0;
  double w2 = -(frac + 1.0) * frac * (frac - 2.0) / 2.0;
  double w3 = (frac + 1.0) * frac * (frac - 1.0) / 6.0;
  auto at = [&](int i) {
    if (i < 0) return f.values.front();
    if (i >= g.N) return f.values.back();
    return f.values[i];
  };
  return w0 * at(i0) + w1 * at(i0 + 1) + w2 * at(i0 + 2) + w3 * at(i0 + 3);
}

double self_similarity_residual(const RieszFellerParams& params, const Grid& grid,
                                double t) {
  if (!(t > 0.0))
    throw std::invalid_argument("self_similarity_residual: t must be > 0");
  GreenKernel gt = build_green(params, grid, t);
  if (t == 1.0) {
    GreenKernel g1 = build_green(params, grid, 1.0);
    double m = 0.0;
    for (int i = 0; i < grid.N; ++i)
      m = std::max(m, std::abs(gt.values[i] - g1.values[i]));
    return m;  // identical builds; 0 by construction
  }
  GreenKernel g1 = build_green(params, grid, 1.0);
  const double r = std::pow(t, -1.0 / params.alpha);
  double m = 0.0;
  for (int i = 0; i < grid.N; ++i) {
    double rescaled = r * interp_cubic(g1.values, grid.x(i) * r);
    m = std::max(m, std::abs(gt.values[i] - rescaled));
  }
  return m;
}

double lp_decay_exponent(const RieszFellerParams& params, const Grid& grid,
                         double p, const std::vector<double>& t_samples) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_decay_exponent: p must be >= 1");
  if (t_samples.size() < 4)
    throw std::invalid_argument("lp_decay_exponent: need at least 4 samples");
  std::vector<double> lt, ln;
  for (double t : t_samples) {
    GreenKernel gk = build_green(params, grid, t);
    double acc = 0.0;
    for (int i = 0; i < grid.N; ++i)
      acc += std::pow(std::abs(gk.values[i]), p);
    double norm = std::pow(grid.dx * acc, 1.0 / p);
    lt.push_back(std::log(t));
    ln.push_back(std::log(norm));
  }
  // Least-squares slope of ln vs lt.
  double n = static_cast<double>(lt.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lt.size(); ++i) {
    sx += lt[i];
    sy += ln[i];
    sxx += lt[i] * lt[i];
    sxy += lt[i] * ln[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double derivative_smoothing_constant(const RieszFellerParams& params, int l, int r,
                                     double t) {
  if (r < 0 || r > l)
    throw std::invalid_argument("derivative_smoothing_constant: need 0 <= r <= l");
  if (!(t > 0.0))
    throw std::invalid_argument("derivative_smoothing_constant: t must be > 0");
  const int m = l - r;
  if (m == 0) return 1.0;  // sup_k e^{t Re psi} at k = 0
  const double a = params.alpha;
  const double c = params.cos_factor();
  // sup_k k^m e^{-t c k^a} attained at k* = (m/(a c t))^{1/a}; multiplying by
  // t^{m/a} removes all t dependence: (m/(a c e))^{m/a}.
  return std::pow(m / (a * c * std::exp(1.0)), static_cast<double>(m) / a);
}

}  // namespace rfwave
