#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "rfwave/fourier.hpp"
#include "rfwave/kernels.hpp"
#include "rfwave/rf_operator.hpp"

namespace rfwave {

std::complex<double> symbol(const RieszFellerParams& params, double k) {
  if (k == 0.0) return {0.0, 0.0};
  double mag = std::pow(std::abs(k), params.alpha);
  double sgn = (k > 0.0) ? 1.0 : -1.0;
  return {-mag * params.cos_factor(), -mag * sgn * params.sin_factor()};
}

std::vector<std::complex<double>> symbol_array(const RieszFellerParams& params,
                                               const Grid& grid) {
  std::vector<std::complex<double>> psi(grid.N);
  for (int j = 0; j < grid.N; ++j) psi[j] = symbol(params, grid.k(j));
  // Unpaired Nyquist bin: keep only the real (dissipative) part so that the
  // multiplier maps real fields to real fields.
  psi[grid.N / 2] = psi[grid.N / 2].real();
  return psi;
}

GridFunction apply_spectral(const RieszFellerParams& params, const GridFunction& f) {
  if (!f.all_finite())
    throw std::invalid_argument("apply_spectral: non-finite input values");
  SpectralField c = to_spectral(f);
  auto psi = symbol_array(params, f.grid);
  for (int j = 0; j < f.grid.N; ++j) c.coeff[j] *= psi[j];
  return to_grid(c);
}

//==== fixed-node singular quadrature =======================================

namespace {

/// 4-point cubic Lagrange weights for fractional offset frac in [0, 1),
/// stencil nodes at offsets {-1, 0, 1, 2}.
inline void cubic_weights(double frac, double w[4]) {
  double f = frac;
  w[0] = -f * (f - 1.0) * (f - 2.0) / 6.0;
  w[1] = (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0;
  w[2] = -(f + 1.0) * f * (f - 2.0) / 2.0;
  w[3] = (f + 1.0) * f * (f - 1.0) / 6.0;
}

/// Simpson nodes and weights on geometric panels [a, ratio*a] covering [dq, M].
void build_nodes(const QuadratureConstants& geom, std::vector<double>& xs,
                 std::vector<double>& ws) {
  xs.clear();
  ws.clear();
  const int n = geom.nodes_per_panel;  // subintervals per panel, even
  double a = geom.dq;
  while (a < geom.M) {
    double b = std::min(a * geom.panel_ratio, geom.M);
    double h = (b - a) / n;
    for (int i = 0; i <= n; ++i) {
      xs.push_back(a + h * i);
      double w = (i == 0 || i == n) ? 1.0 : ((i % 2) ? 4.0 : 2.0);
      ws.push_back(w * h / 3.0);
    }
    a = b;
  }
}

/// Centered finite-difference derivatives on the padded array (constant
/// far-field extension).  vext has pad cells of padding on each side.
struct FiniteDifferences {
  std::vector<double> vp, vpp, vppp;

  FiniteDifferences(const std::vector<double>& vext, int pad, int N, double dx) {
    vp.resize(N);
    vpp.resize(N);
    vppp.resize(N);
    const double inv12h = 1.0 / (12.0 * dx);
    const double invh2 = 1.0 / (dx * dx);
    const double inv2h3 = 1.0 / (2.0 * dx * dx * dx);
    for (int i = 0; i < N; ++i) {
      const double* v = vext.data() + pad + i;
      // 4th-order first derivative: (8(v1 - v-1) - (v2 - v-2)) / 12h
      vp[i] = (8.0 * (v[1] - v[-1]) - (v[2] - v[-2])) * inv12h;
      // 2nd-order second derivative
      vpp[i] = (v[1] - 2.0 * v[0] + v[-1]) * invh2;
      // 2nd-order third derivative: (v2 - 2 v1 + 2 v-1 - v-2) / 2h^3
      vppp[i] = (v[2] - 2.0 * v[1] + 2.0 * v[-1] - v[-2]) * inv2h3;
    }
  }
};

}  // namespace

std::pair<GridFunction, GridFunction> one_sided_integrals(
    double alpha, const QuadratureConstants& geom, const GridFunction& f,
    double f_left, double f_right) {
  if (!(alpha > 1.0 && alpha < 2.0))
    throw std::invalid_argument("one_sided_integrals: requires 1 < alpha < 2");
  if (!(geom.M > geom.dq && geom.dq > 0.0))
    throw std::invalid_argument("one_sided_integrals: requires M > dq > 0");
  if (!f.all_finite())
    throw std::invalid_argument("one_sided_integrals: non-finite input");

  const Grid& g = f.grid;
  const int N = g.N;
  const double dx = g.dx;
  const auto& K = kernels::ops();

  std::vector<double> xs, ws;
  build_nodes(geom, xs, ws);

  // Padded field with constant far-field extension.
  const int pad = static_cast<int>(std::ceil(geom.M / dx)) + 3;
  std::vector<double> vext(N + 2 * pad);
  for (int i = 0; i < pad; ++i) vext[i] = f_left;
  for (int i = 0; i < N; ++i) vext[pad + i] = f.values[i];
  for (int i = 0; i < pad; ++i) vext[pad + N + i] = f_right;

  FiniteDifferences fd(vext, pad, N, dx);

  // Node weights divided by the kernel xi^{1+alpha}, plus the moment sums
  // that carry the -v(x) - sgn * v'(x) xi counterterms.
  std::vector<double> xw(xs.size());
  double sumw = 0.0, sumwx = 0.0;
  for (std::size_t q = 0; q < xs.size(); ++q) {
    xw[q] = ws[q] / std::pow(xs[q], 1.0 + alpha);
    sumw += xw[q];
    sumwx += xw[q] * xs[q];
  }

  const double inner2 = std::pow(geom.dq, 2.0 - alpha) / (2.0 - alpha);
  const double inner3 = std::pow(geom.dq, 3.0 - alpha) / (3.0 - alpha);
  const double tail0 = std::pow(geom.M, -alpha) / alpha;
  const double tail1 = std::pow(geom.M, 1.0 - alpha) / (alpha - 1.0);

  GridFunction out_plus(g), out_minus(g);
  for (int side = 0; side < 2; ++side) {
    const double sgn = (side == 0) ? 1.0 : -1.0;
    GridFunction& out = (side == 0) ? out_plus : out_minus;
    double* o = out.values.data();

    // Inner Taylor remainder on [0, dq]:
    //   1/2 v'' dq^{2-a}/(2-a)  + sgn * 1/6 v''' dq^{3-a}/(3-a)
    for (int i = 0; i < N; ++i)
      o[i] = 0.5 * fd.vpp[i] * inner2 + sgn * fd.vppp[i] / 6.0 * inner3;

    // Middle region: per node, one 4-tap stencil pass over all grid points.
    for (std::size_t q = 0; q < xs.size(); ++q) {
      double off = sgn * xs[q] / dx;
      double fl = std::floor(off);
      double frac = off - fl;
      double cw[4];
      cubic_weights(frac, cw);
      for (double& w : cw) w *= xw[q];
      std::ptrdiff_t base = pad + static_cast<std::ptrdiff_t>(fl) - 1;
      K.stencil4_accumulate(o, vext.data(), base, cw, 0, N);
    }

    // Counterterms and analytic far-field tail:
    //   - sumw v - sgn sumwx v'  + (lim - v) M^-a/a - sgn v' M^{1-a}/(a-1)
    const double lim = (side == 0) ? f_right : f_left;
    for (int i = 0; i < N; ++i) {
      o[i] -= sumw * f.values[i] + sgn * sumwx * fd.vp[i];
      o[i] += (lim - f.values[i]) * tail0 - sgn * fd.vp[i] * tail1;
    }
  }
  return {std::move(out_plus), std::move(out_minus)};
}

GridFunction apply_singular(const RieszFellerParams& params,
                            const QuadratureConstants& consts,
                            const GridFunction& f, double f_left, double f_right) {
  auto [ip, im] = one_sided_integrals(params.alpha, consts, f, f_left, f_right);
  GridFunction out(f.grid);
  for (int i = 0; i < f.grid.N; ++i)
    out.values[i] = consts.c1 * ip.values[i] + consts.c2 * im.values[i];
  return out;
}

//==== calibration ==========================================================

namespace {

const double kCalibrationWidths[3] = {0.5, 1.0, 2.0};

GridFunction gaussian(const Grid& g, double w) {
  return GridFunction::sample(
      g, [w](double x) { return std::exp(-x * x / (2.0 * w * w)); });
}

}  // namespace

QuadratureConstants calibrate_constants(const RieszFellerParams& params, double tol,
                                        const Grid& grid) {
  if (!(params.alpha > 1.0 && params.alpha < 2.0))
    throw std::invalid_argument("calibrate_constants: requires 1 < alpha < 2");

  QuadratureConstants consts = QuadratureConstants::geometry_for(grid);

  // Normal equations for min over (c1, c2) of sum ||c1 I+ + c2 I- - D_spec||^2.
  double a11 = 0.0, a12 = 0.0, a22 = 0.0, b1 = 0.0, b2 = 0.0;
  struct Row {
    GridFunction ip, im, ds;
  };
  std::vector<Row> rows;
  const auto& K = kernels::ops();
  for (double w : kCalibrationWidths) {
    GridFunction v = gaussian(grid, w);
    auto [ip, im] = one_sided_integrals(params.alpha, consts, v, 0.0, 0.0);
    GridFunction ds = apply_spectral(params, v);
    const std::size_t n = static_cast<std::size_t>(grid.N);
    a11 += K.dot(ip.data(), ip.data(), n);
    a12 += K.dot(ip.data(), im.data(), n);
    a22 += K.dot(im.data(), im.data(), n);
    b1 += K.dot(ip.data(), ds.data(), n);
    b2 += K.dot(im.data(), ds.data(), n);
    rows.push_back({std::move(ip), std::move(im), std::move(ds)});
  }
  double det = a11 * a22 - a12 * a12;
  if (det == 0.0) throw std::runtime_error("calibrate_constants: singular system");
  double c1 = (b1 * a22 - b2 * a12) / det;
  double c2 = (a11 * b2 - a12 * b1) / det;

  // One-sided boundary cases produce a vanishing weight whose estimate may
  // come out at round-off-negative; clamp, then verify the residual honestly.
  double scale = std::abs(c1) + std::abs(c2);
  if (c1 < 0.0 && c1 > -1e-3 * scale) c1 = 0.0;
  if (c2 < 0.0 && c2 > -1e-3 * scale) c2 = 0.0;
  if (c1 < 0.0 || c2 < 0.0 || c1 + c2 <= 0.0)
    throw std::runtime_error("calibrate_constants: invalid weights (c1, c2)");

  consts.c1 = c1;
  consts.c2 = c2;

  double worst = 0.0;
  for (const Row& r : rows) {
    double emax = 0.0, dmax = 0.0;
    for (int i = 0; i < grid.N; ++i) {
      double model = c1 * r.ip.values[i] + c2 * r.im.values[i];
      emax = std::max(emax, std::abs(model - r.ds.values[i]));
      dmax = std::max(dmax, std::abs(r.ds.values[i]));
    }
    worst = std::max(worst, emax / dmax);
  }
  if (!(worst < tol))
    throw std::runtime_error(
        "calibrate_constants: residual " + std::to_string(worst) +
        " exceeds tolerance " + std::to_string(tol));
  return consts;
}

double cross_representation_residual(const RieszFellerParams& params,
                                     const QuadratureConstants& consts,
                                     const Grid& grid) {
  QuadratureConstants geom = consts.rebind(grid);
  double worst = 0.0;
  for (double w : kCalibrationWidths) {
    GridFunction v = gaussian(grid, w);
    GridFunction dq = apply_singular(params, geom, v, 0.0, 0.0);
    GridFunction ds = apply_spectral(params, v);
    double emax = 0.0, dmax = 0.0;
    for (int i = 0; i < grid.N; ++i) {
      emax = std::max(emax, std::abs(dq.values[i] - ds.values[i]));
      dmax = std::max(dmax, std::abs(ds.values[i]));
    }
    worst = std::max(worst, emax / dmax);
  }
  return worst;
}

}  // namespace rfwave
