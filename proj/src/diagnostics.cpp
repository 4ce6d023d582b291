#include "rfwave/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "rfwave/fourier.hpp"
#include "rfwave/kernels.hpp"

namespace rfwave {

namespace {
constexpr double kPi = std::numbers::pi;
}

//==== basic integrals and norms =============================================

double trapezoid_integral(const GridFunction& f) {
  const auto& v = f.values;
  return f.grid.dx * kernels::ops().sum(v.data(), v.size());
}

double norm_l1(const GridFunction& f) {
  GridFunction a = f;
  for (double& x : a.values) x = std::abs(x);
  return trapezoid_integral(a);
}

double norm_l2(const GridFunction& f) {
  GridFunction sq = f;
  for (double& x : sq.values) x = x * x;
  return std::sqrt(std::max(0.0, trapezoid_integral(sq)));
}

double norm_lp(const GridFunction& f, double p) {
  if (p < 1.0) throw std::invalid_argument("norm_lp: p must be >= 1");
  double s = 0.0;
  for (double x : f.values) s += std::pow(std::abs(x), p);
  return std::pow(f.grid.dx * s, 1.0 / p);
}

double norm_linf(const GridFunction& f) {
  return kernels::ops().max_abs(f.values.data(), f.values.size());
}

//==== exact L1 of the trigonometric interpolant =============================

namespace {

/// Antiderivative of the interpolant from a to b.
double interp_integral(const SpectralField& c, double a, double b) {
  const int n = c.grid.N;
  const double inv2l = 1.0 / (2.0 * c.grid.L);
  double acc = c.coeff[0].real() * (b - a);
  for (int j = 1; j < n / 2; ++j) {
    const double k = c.grid.k(j);
    const std::complex<double> ik(0.0, k);
    acc += 2.0 * (c.coeff[j] * (std::polar(1.0, k * b) - std::polar(1.0, k * a)) / ik).real();
  }
  const double kny = c.grid.k(n / 2);
  acc += c.coeff[n / 2].real() * (std::sin(kny * b) - std::sin(kny * a)) / kny;
  return inv2l * acc;
}

/// Bisection root of the interpolant in [a, b] given a sign change.
double interp_root(const SpectralField& c, double a, double b, double fa) {
  for (int it = 0; it < 60 && b - a > 1e-15 * c.grid.L; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = trig_interp(c, m);
    if (fm == 0.0) return m;
    if ((fa < 0) != (fm < 0)) {
      b = m;
    } else {
      a = m;
      fa = fm;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

double norm_l1_exact(const GridFunction& f) {
  const SpectralField c = to_spectral(f);
  const int n = f.grid.N;
  const double l = f.grid.L;

  // Locate sign changes of the interpolant from the grid samples (the
  // interpolant passes through them), refine by bisection.
  std::vector<double> cuts;
  cuts.push_back(-l);
  for (int i = 0; i < n; ++i) {
    const double a = f.grid.x(i);
    const double b = a + f.grid.dx;  // wraps to +L at i = N-1
    const double fa = f.values[i];
    const double fb = (i + 1 < n) ? f.values[i + 1] : trig_interp(c, b);
    if (fa == 0.0 || (fa < 0) != (fb < 0)) {
      cuts.push_back(fa == 0.0 ? a : interp_root(c, a, b, fa));
    }
  }
  cuts.push_back(l);
  std::sort(cuts.begin(), cuts.end());

  // Between consecutive cuts the interpolant is single-signed, so the
  // absolute segment integral IS the segment's L1 mass.  (Reading the sign
  // from a point sample instead is fragile: in a far tail the interpolant is
  // pure round-off noise, and a wrong sign flips the whole segment.)
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double a = cuts[s], b = cuts[s + 1];
    if (b - a < 1e-14 * l) continue;
    total += std::abs(interp_integral(c, a, b));
  }
  return total;
}

//==== Sobolev norms =========================================================

namespace {

/// Shared spectral sum (1/2L) sum w(|k|) |c_j|^2 over all modes.
double spectral_quadratic(const GridFunction& f, const std::function<double(double)>& w) {
  const SpectralField c = to_spectral(f);
  double acc = 0.0;
  for (int j = 0; j < f.grid.N; ++j) {
    acc += w(std::abs(f.grid.k(j))) * std::norm(c.coeff[j]);
  }
  return acc / (2.0 * f.grid.L);
}

}  // namespace

double sobolev_seminorm(const GridFunction& f, double sigma) {
  if (sigma < 0) throw std::invalid_argument("sobolev_seminorm: sigma must be >= 0");
  // std::pow(0, 0) == 1, so sigma = 0 includes the k = 0 mode and
  // reproduces the plain Parseval L2 norm.
  const double s2 = spectral_quadratic(
      f, [sigma](double ak) { return std::pow(ak, 2.0 * sigma); });
  return std::sqrt(std::max(0.0, s2));
}

double sobolev_norm(const GridFunction& f, double sigma) {
  const double s2 = spectral_quadratic(
      f, [sigma](double ak) { return std::pow(1.0 + ak * ak, sigma); });
  return std::sqrt(std::max(0.0, s2));
}

double norm_h1(const GridFunction& f) {
  const double s2 = spectral_quadratic(f, [](double ak) { return 1.0 + ak * ak; });
  return std::sqrt(std::max(0.0, s2));
}

double norm_h2(const GridFunction& f) {
  const double s2 = spectral_quadratic(f, [](double ak) {
    const double k2 = ak * ak;
    return 1.0 + k2 + k2 * k2;
  });
  return std::sqrt(std::max(0.0, s2));
}

//==== inequality checks =====================================================

double interpolation_gap(const GridFunction& f, double sigma, double epsilon) {
  if (sigma < 0.0 || sigma > 2.0)
    throw std::invalid_argument("interpolation_gap: sigma must lie in [0, 2]");
  if (epsilon <= 0.0) throw std::invalid_argument("interpolation_gap: epsilon must be > 0");
  const double lhs = std::pow(sobolev_seminorm(f, 1.0), 2);
  const double a = std::pow(sobolev_seminorm(f, 0.5 * sigma), 2);
  const double b = std::pow(sobolev_seminorm(f, 0.5 * sigma + 1.0), 2);
  return std::pow(epsilon, sigma - 2.0) * a + std::pow(epsilon, sigma) * b - lhs;
}

double nash_constant(double sigma) {
  if (sigma <= 0.0) throw std::invalid_argument("nash_constant: sigma must be > 0");
  const double q = 2.0 * sigma;
  const double kappa = std::pow(q, 1.0 / (1.0 + q)) + std::pow(q, -q / (1.0 + q));
  return std::pow(kappa, 1.0 + q) / std::pow(kPi, q);
}

double nash_ratio(const GridFunction& f, double sigma, bool exact_l1) {
  if (sigma <= 0.0) throw std::invalid_argument("nash_ratio: sigma must be > 0");
  if (norm_linf(f) == 0.0) throw std::invalid_argument("nash_ratio: f is identically zero");
  const double l2 = sobolev_seminorm(f, 0.0);
  const double l1 = exact_l1 ? norm_l1_exact(f) : norm_l1(f);
  const double hs = sobolev_seminorm(f, sigma);
  const double denom = std::pow(l1, 4.0 * sigma) * hs * hs;
  if (denom == 0.0 || !std::isfinite(denom))
    throw std::invalid_argument("nash_ratio: degenerate denominator");
  return std::pow(l2, 2.0 * (1.0 + 2.0 * sigma)) / denom;
}

double gn_constant(double sigma) {
  if (sigma <= 0.25) throw std::invalid_argument("gn_constant: sigma must be > 1/4");
  // Hausdorff-Young: |f|_L3 <= (2 pi)^(-1/6) |f_hat|_{L^(3/2)}; split the
  // spectrum at R and apply Cauchy-Schwarz on each band:
  //   |f_hat|_{L^(3/2)}^(3/2) <= ... => |f|^3_L3 <= (2 pi)^(-1/2) h(R)^2
  //     * |f|_L2 |f|^2_{H sigma},
  //   h(R) = 2^(1/4) R^(1/4) + (2/q)^(1/4) R^(-q/4),  q = 6 sigma - 1,
  // minimized in closed form at R* = (B q / A)^(4/(1+q)).
  const double q = 6.0 * sigma - 1.0;
  const double a = std::pow(2.0, 0.25);
  const double b = std::pow(2.0 / q, 0.25);
  const double rstar = std::pow(b * q / a, 4.0 / (1.0 + q));
  const double h = a * std::pow(rstar, 0.25) + b * std::pow(rstar, -0.25 * q);
  return h * h / std::sqrt(2.0 * kPi);
}

double gn_ratio(const GridFunction& f, double sigma) {
  if (sigma <= 0.25) throw std::invalid_argument("gn_ratio: sigma must be > 1/4");
  if (norm_linf(f) == 0.0) throw std::invalid_argument("gn_ratio: f is identically zero");
  const double l3 = norm_lp(f, 3.0);
  const double l2 = sobolev_seminorm(f, 0.0);
  const double hs = sobolev_norm(f, sigma);
  return l3 * l3 * l3 / (l2 * hs * hs);
}

GridFunction convexity_gap(const RieszFellerParams& params,
                           const QuadratureConstants& consts,
                           const GridFunction& u, ConvexEta eta_kind) {
  std::function<double(double)> eta, etap;
  switch (eta_kind) {
    case ConvexEta::square:
      eta = [](double v) { return v * v; };
      etap = [](double v) { return 2.0 * v; };
      break;
    case ConvexEta::exponential:
      eta = [](double v) { return std::exp(v); };
      etap = [](double v) { return std::exp(v); };
      break;
    case ConvexEta::soft_abs:
      eta = [](double v) { return std::sqrt(v * v + 0.25) - 0.5; };
      etap = [](double v) { return v / std::sqrt(v * v + 0.25); };
      break;
  }
  const double ul = u.values.front(), ur = u.values.back();
  GridFunction eta_u = u;
  for (double& v : eta_u.values) v = eta(v);

  // Shared quadrature geometry: every node contributes a Bregman
  // divergence eta(b) - eta(a) - eta'(a)(b - a) >= 0, so the combined
  // field is nonnegative up to interpolation noise.
  const GridFunction d_eta = apply_singular(params, consts, eta_u, eta(ul), eta(ur));
  const GridFunction d_u = apply_singular(params, consts, u, ul, ur);
  GridFunction gap = u;
  for (int i = 0; i < u.grid.N; ++i) {
    gap.values[i] = d_eta.values[i] - etap(u.values[i]) * d_u.values[i];
  }
  return gap;
}

double zero_integral_gap(const RieszFellerParams& params,
                         const QuadratureConstants& consts,
                         const GridFunction& v) {
  const double vl = v.values.front(), vr = v.values.back();
  const GridFunction dv = apply_singular(params, consts, v, vl, vr);
  const Grid& g = v.grid;

  // dv is a line object, not a periodic one: its algebraic tails differ at
  // the two edges, so integrate it with the open trapezoid over [-L, L],
  // extrapolating the unsampled dv(+L) node linearly from the last two.
  const double dv_at_l = 2.0 * dv.values[g.N - 1] - dv.values[g.N - 2];
  const double on_grid =
      g.dx * (kernels::ops().sum(dv.values.data(), dv.values.size()) -
              0.5 * dv.values.front() + 0.5 * dv_at_l);

  // Analytic tail corrections: outside the grid, v is extended by its
  // boundary constants, so only the inward-looking one-sided integral
  // survives.  Exchanging the order of integration over x > L gives
  //   c2 * [ int_grid (v(y) - vr) (L - y)^(-alpha)/alpha dy
  //          + (vl - vr) (2L)^(1-alpha) / (alpha (alpha-1)) ],
  // and the mirror image for x < -L with c1 and (y + L).  Each integrand is
  // finite but nonzero at its FAR endpoint -- (v - vr)(L - y)^-alpha at
  // y = -L, and the mirror at y = +L -- so the trapezoid keeps those
  // half-cells explicitly; dropping them leaves an
  // O(dx |vl - vr| (2L)^-alpha) defect that would dominate the measurement.
  // At each integrand's NEAR endpoint the numerator vanishes for edge-flat
  // fields (v(-L) = vl, v(L) ~ vr), so that half-cell contributes nothing.
  const double al = params.alpha;
  const double edge = 0.5 * (vl - vr) * std::pow(2.0 * g.L, -al);
  double right = edge, left = -edge;
  for (int i = 1; i < g.N; ++i) {
    const double xi = g.x(i);
    right += (v.values[i] - vr) * std::pow(g.L - xi, -al);
    left += (v.values[i] - vl) * std::pow(xi + g.L, -al);
  }
  right = g.dx * right / al;
  left = g.dx * left / al;
  const double far = std::pow(2.0 * g.L, 1.0 - al) / (al * (al - 1.0));
  right += (vl - vr) * far;
  left += (vr - vl) * far;
  return std::abs(on_grid + consts.c2 * right + consts.c1 * left);
}

//==== trajectory records ====================================================

DiagnosticRecord make_record(const GridFunction& W, const GridFunction& U,
                             const GridFunction& cross_weight, double alpha) {
  DiagnosticRecord r;
  r.l1_W = norm_l1(W);
  r.l2_W = sobolev_seminorm(W, 0.0);
  r.linf_W = norm_linf(W);
  r.l1_U = norm_l1(U);
  r.l2_U = sobolev_seminorm(U, 0.0);
  r.linf_U = norm_linf(U);
  r.hdot_half_W = sobolev_seminorm(W, 0.5 * alpha);
  r.hdot_half_U = sobolev_seminorm(U, 0.5 * alpha);
  r.h1_W = norm_h1(W);
  r.h2_W = norm_h2(W);
  GridFunction integrand = W;
  for (int i = 0; i < W.grid.N; ++i) {
    integrand.values[i] = cross_weight.values[i] * W.values[i] * W.values[i];
  }
  r.cross_term = trapezoid_integral(integrand);
  r.energy2 = r.h2_W * r.h2_W;
  double diss = 0.0;
  for (int l = 0; l < 3; ++l) {
    const double s = sobolev_seminorm(W, 0.5 * alpha + l);
    diss += s * s;
  }
  r.dissipation2 = diss;
  return r;
}

std::vector<LedgerRow> energy_ledger(const Trajectory& traj) {
  if (traj.snaps.empty()) throw std::invalid_argument("energy_ledger: empty trajectory");
  std::vector<LedgerRow> rows;
  rows.reserve(traj.snaps.size());
  const double h1_0 = traj.snaps.front().rec.h1_W;
  double cum_diss = 0.0, cum_cross = 0.0;
  for (std::size_t i = 0; i < traj.snaps.size(); ++i) {
    const Snapshot& s = traj.snaps[i];
    if (i > 0) {
      const Snapshot& p = traj.snaps[i - 1];
      const double dt = s.t - p.t;
      cum_diss += 0.5 * dt * (p.rec.dissipation2 + s.rec.dissipation2);
      cum_cross += 0.5 * dt * (p.rec.cross_term + s.rec.cross_term);
    }
    LedgerRow row;
    row.t = s.t;
    row.energy2 = s.rec.energy2;
    row.h1 = s.rec.h1_W;
    row.cumulative_dissipation = cum_diss;
    row.cross_term = s.rec.cross_term;
    row.cumulative_cross = cum_cross;
    row.h1_exceeded = s.rec.h1_W > h1_0 * (1.0 + 1e-8);
    rows.push_back(row);
  }
  return rows;
}

//==== decay fitting =========================================================

DecayFit fit_power_law(const std::vector<double>& t, const std::vector<double>& norm,
                       double t_min, double bound_exponent) {
  if (t.size() != norm.size())
    throw std::invalid_argument("fit_power_law: mismatched sample vectors");
  std::vector<double> xs, ys;
  double bound_sup = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_min) continue;
    if (norm[i] <= 0.0)
      throw std::invalid_argument("fit_power_law: non-positive norm in fit window");
    xs.push_back(std::log1p(t[i]));
    ys.push_back(std::log(norm[i]));
    bound_sup = std::max(bound_sup, norm[i] * std::pow(1.0 + t[i], -bound_exponent));
  }
  if (xs.size() < 8)
    throw std::invalid_argument("fit_power_law: need at least 8 samples with t >= t_min");
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom <= 0.0) throw std::invalid_argument("fit_power_law: degenerate time window");
  DecayFit fit;
  fit.exponent = (n * sxy - sx * sy) / denom;
  fit.amplitude = std::exp((sy - fit.exponent * sx) / n);
  fit.bound_sup = bound_sup;
  return fit;
}

DecayFit fit_decay_rate(const Trajectory& traj, const std::string& norm_key, double t_min) {
  std::vector<double> t, v;
  t.reserve(traj.snaps.size());
  v.reserve(traj.snaps.size());
  for (const Snapshot& s : traj.snaps) {
    t.push_back(s.t);
    const DiagnosticRecord& r = s.rec;
    double value = 0.0;
    if (norm_key == "l1_U") value = r.l1_U;
    else if (norm_key == "l2_U") value = r.l2_U;
    else if (norm_key == "linf_U") value = r.linf_U;
    else if (norm_key == "l1_W") value = r.l1_W;
    else if (norm_key == "l2_W") value = r.l2_W;
    else if (norm_key == "linf_W") value = r.linf_W;
    else if (norm_key == "h1_W") value = r.h1_W;
    else if (norm_key == "h2_W") value = r.h2_W;
    else throw std::invalid_argument("fit_decay_rate: unknown norm key '" + norm_key + "'");
    v.push_back(value);
  }
  return fit_power_law(t, v, t_min, -0.5 / traj.params.alpha);
}

//==== plot script emission ==================================================

std::string gnuplot_norm_script(const std::string& csv_file,
                                const std::vector<std::pair<int, std::string>>& columns,
                                const std::string& title) {
  std::ostringstream os;
  os << "# gnuplot script: norm decay on log-log axes\n";
  os << "set datafile separator ','\n";
  os << "set logscale xy\n";
  os << "set xlabel '1 + t'\n";
  os << "set ylabel 'norm'\n";
  os << "set title '" << title << "'\n";
  os << "set key left bottom\n";
  os << "plot ";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) os << ", \\\n     ";
    os << "'" << csv_file << "' skip 1 using (1+$1):" << columns[i].first
       << " with lines title '" << columns[i].second << "'";
  }
  os << "\n";
  return os.str();
}

}  // namespace rfwave
