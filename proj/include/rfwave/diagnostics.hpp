#pragma once

///
/// Norms, inequality checks, energy ledger, and decay-rate fitting.
///
/// Everything here is read-only analysis over grid functions and recorded
/// trajectories.  Sobolev (semi)norms are computed spectrally so that the
/// discrete checks mirror the Plancherel-based continuous arguments.
///

#include <string>
#include <vector>

#include "rfwave/field.hpp"
#include "rfwave/params.hpp"
#include "rfwave/rf_operator.hpp"

namespace rfwave {

//==== basic integrals and norms =============================================

/// Trapezoid rule on the periodic grid: the wrap cell [L-dx, L) closes the
/// telescoping sum, so the rule reduces to dx * sum(f).  Spectrally accurate
/// for smooth periodic data, exactly translation-invariant under
/// spectral_shift, and consistent with the Plancherel convention.
double trapezoid_integral(const GridFunction& f);

/// Trapezoid L1 norm (integral of |f|).
double norm_l1(const GridFunction& f);

/// L1 norm of the trigonometric interpolant, exact up to root-finding
/// round-off.  Zeros of the interpolant are located and the per-mode
/// antiderivative is summed on sign-constant segments.  O(N * segments);
/// use where trapezoid kink error at sign changes matters (e.g. the
/// dilation-invariance check of nash_ratio).
double norm_l1_exact(const GridFunction& f);

/// Trapezoid L2 norm: sqrt of the trapezoid integral of f^2.
double norm_l2(const GridFunction& f);

/// Plain discrete Lp norm (dx * sum |f|^p)^(1/p), p >= 1.
double norm_lp(const GridFunction& f, double p);

/// Max-abs norm.
double norm_linf(const GridFunction& f);

/// Homogeneous Sobolev seminorm |f|_{Hdot^sigma} computed spectrally:
/// sqrt( (1/2L) * sum |k|^(2 sigma) |f_hat(k)|^2 ).  sigma = 0 reproduces
/// the L2 norm (exact Parseval with the plain dx-weighted sum).
double sobolev_seminorm(const GridFunction& f, double sigma);

/// Full Sobolev norm with weight (1 + k^2)^sigma.
double sobolev_norm(const GridFunction& f, double sigma);

/// H1 norm: sqrt(L2^2 + Hdot1^2).
double norm_h1(const GridFunction& f);

/// H2 norm: sqrt(L2^2 + Hdot1^2 + Hdot2^2).
double norm_h2(const GridFunction& f);

//==== inequality checks =====================================================

/// Gap of the spectral interpolation inequality
///   |f|^2_{Hdot^1} <= eps^(sigma-2) |f|^2_{Hdot^(sigma/2)}
///                   + eps^sigma     |f|^2_{Hdot^(sigma/2+1)}
/// for 0 <= sigma <= 2 and eps > 0.  Returns RHS - LHS, which is
/// nonnegative up to round-off because the inequality holds pointwise
/// in k (h^2 <= h^sigma + h^(2+sigma) with h = eps |k|... after scaling).
double interpolation_gap(const GridFunction& f, double sigma, double epsilon);

/// Provable constant for the one-dimensional Nash-type inequality
///   |f|_{L2}^(2(1+2 sigma)) <= C_sigma |f|_{L1}^(4 sigma) |f|^2_{Hdot^sigma},
/// obtained by the classical band-splitting argument:
///   C_sigma = kappa^(1+2 sigma) / pi^(2 sigma),
///   kappa   = (2 sigma)^(1/(1+2 sigma)) + (2 sigma)^(-2 sigma/(1+2 sigma)).
double nash_constant(double sigma);

/// Ratio LHS / (|f|_{L1}^(4 sigma) |f|^2_{Hdot^sigma}) of the Nash-type
/// inequality; scale- and dilation-invariant.  exact_l1 switches the L1
/// norm to the trig-interpolant evaluation (needed for the 1e-10
/// dilation-invariance check).  Rejects f identically zero.
double nash_ratio(const GridFunction& f, double sigma, bool exact_l1 = false);

/// Provable constant for the Gagliardo-Nirenberg-type inequality
///   |f|^3_{L3} <= C0 |f|_{L2} |f|^2_{H^sigma},  sigma > 1/4,
/// from Hausdorff-Young plus an optimized band split.
double gn_constant(double sigma);

/// Ratio |f|^3_{L3} / (|f|_{L2} |f|^2_{H^sigma}).  Requires sigma > 1/4;
/// rejects f identically zero.
double gn_ratio(const GridFunction& f, double sigma);

/// Convex entropy presets for the convexity-gap check.
enum class ConvexEta {
  square,    ///< eta(u) = u^2
  exponential, ///< eta(u) = e^u
  soft_abs,  ///< eta(u) = sqrt(u^2 + 1/4) - 1/2 (smoothed |u|)
};

/// Pointwise entropy-dissipation gap  D eta(u) - eta'(u) * D u  evaluated
/// with the singular-integral representation on shared quadrature nodes,
/// so each node contributes a Bregman divergence of the convex eta and the
/// result is nonnegative up to interpolation/truncation noise (tolerance
/// -1e-6).  Far-field limits of u are taken from its boundary values.
GridFunction convexity_gap(const RieszFellerParams& params,
                           const QuadratureConstants& consts,
                           const GridFunction& u, ConvexEta eta_kind);

/// |integral of D v| over the line: trapezoid integral of apply_singular(v)
/// over the grid plus analytic corrections for the two truncated tails.
/// The operator integrates to zero on the line, so the returned magnitude
/// measures quadrature + truncation error.  Assumes v is exponentially
/// flat at the grid ends (tanh/Gaussian-type fields).
double zero_integral_gap(const RieszFellerParams& params,
                         const QuadratureConstants& consts,
                         const GridFunction& v);

//==== trajectories ==========================================================

/// Per-snapshot norm and energy bookkeeping.
struct DiagnosticRecord {
  double l1_W = 0, l2_W = 0, linf_W = 0;
  double l1_U = 0, l2_U = 0, linf_U = 0;
  double hdot_half_W = 0;  ///< |W|_{Hdot^(alpha/2)}
  double hdot_half_U = 0;  ///< |U|_{Hdot^(alpha/2)}
  double h1_W = 0, h2_W = 0;
  double cross_term = 0;    ///< integral of f''(ubar) ubar' W^2 (<= 0)
  double energy2 = 0;       ///< |W|^2_{H2}
  double dissipation2 = 0;  ///< sum_{l=0..2} |W|^2_{Hdot^(alpha/2+l)}
};

/// Computes a DiagnosticRecord.  cross_weight must hold f''(ubar) * ubar'
/// sampled on the grid (precomputed once per profile).
DiagnosticRecord make_record(const GridFunction& W, const GridFunction& U,
                             const GridFunction& cross_weight, double alpha);

struct Snapshot {
  double t = 0;
  GridFunction W;
  GridFunction U;
  DiagnosticRecord rec;
};

/// Recorded evolution run: metadata + ordered snapshots.
struct Trajectory {
  RieszFellerParams params{2.0, 0.0};
  WaveData wave;
  std::string flux_name;
  Grid grid{1.0, 2};
  std::vector<Snapshot> snaps;
  /// Largest growth of the outermost-cell |U| above its initial value during
  /// the run, and the first time it exceeded the boundary-amplitude budget
  /// (-1 if never).  The initial edge value is excluded so a shifted
  /// profile's static seam offset does not count as transport.
  double boundary_max = 0;
  double boundary_flag_time = -1;
  bool boundary_flagged = false;
};

//==== energy ledger =========================================================

struct LedgerRow {
  double t = 0;
  double energy2 = 0;               ///< |W(t)|^2_{H2}
  double h1 = 0;                    ///< |W(t)|_{H1}
  double cumulative_dissipation = 0;  ///< trapezoid-in-time of dissipation2
  double cross_term = 0;              ///< instantaneous cross term (<= 0)
  double cumulative_cross = 0;        ///< trapezoid-in-time of cross_term
  bool h1_exceeded = false;  ///< |W(t)|_{H1} > |W(0)|_{H1} * (1 + 1e-8)
};

/// Per-snapshot energy bookkeeping with cumulative trapezoid time
/// integrals; flags snapshots where the H1 norm exceeds its initial value
/// beyond round-off (small-data monotonicity violation).
std::vector<LedgerRow> energy_ledger(const Trajectory& traj);

//==== decay fitting =========================================================

struct DecayFit {
  double exponent = 0;   ///< least-squares slope of log(norm) vs log(1+t)
  double amplitude = 0;  ///< exp(intercept)
  double bound_sup = 0;  ///< sup over the window of norm * (1+t)^(-bound_exponent)
};

/// Least-squares power-law fit norm ~ amplitude * (1+t)^exponent over
/// samples with t >= t_min.  bound_exponent is the theoretical decay
/// exponent (e.g. -1/(2 alpha)); bound_sup = sup norm / (1+t)^bound_exponent.
/// Requires >= 8 admitted samples with positive norms.
DecayFit fit_power_law(const std::vector<double>& t,
                       const std::vector<double>& norm, double t_min,
                       double bound_exponent);

/// Trajectory wrapper: extracts the named norm per snapshot and fits.
/// norm_key is one of: l1_U, l2_U, linf_U, l1_W, l2_W, linf_W, h1_W, h2_W.
DecayFit fit_decay_rate(const Trajectory& traj, const std::string& norm_key,
                        double t_min);

//==== plot script emission ==================================================

/// Returns a gnuplot script reproducing the norm-vs-time log-log figure
/// from a trajectory CSV.  columns lists (1-based CSV column, title) pairs;
/// column 1 must be t.  The script plots norm * (1+t) on log-log axes.
std::string gnuplot_norm_script(const std::string& csv_file,
                                const std::vector<std::pair<int, std::string>>& columns,
                                const std::string& title);

}  // namespace rfwave
