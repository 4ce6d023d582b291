#pragma once

#include <complex>
#include <utility>

#include "rfwave/field.hpp"
#include "rfwave/params.hpp"

namespace rfwave {

//==== Riesz-Feller operator ================================================

/// Fourier symbol psi(k) = -|k|^alpha (cos(theta pi/2) + i sgn(k) sin(theta pi/2)).
/// psi(0) = 0; Re psi <= 0 (dissipativity); psi(-k) = conj(psi(k)).
std::complex<double> symbol(const RieszFellerParams& params, double k);

/// Symbol sampled on the grid's DFT bins, with the unpaired Nyquist bin
/// replaced by its real part so real fields map to real fields.
std::vector<std::complex<double>> symbol_array(const RieszFellerParams& params,
                                               const Grid& grid);

/// Spectral application: inverse transform of symbol(k) * f_hat(k).
/// Requires a boundary-compatible field (equal end values up to decay).
GridFunction apply_spectral(const RieszFellerParams& params, const GridFunction& f);

//==== singular-integral representation =====================================

/// Fixed-node quadrature geometry plus the calibrated one-sided weights
/// c1 (right-looking integral, samples v(x+xi)) and c2 (left-looking).
struct QuadratureConstants {
  double c1 = 0.0;          ///< weight of the v(x+xi) integral, >= 0
  double c2 = 0.0;          ///< weight of the v(x-xi) integral, >= 0
  double M = 0.0;           ///< outer truncation radius (analytic tail beyond)
  double dq = 0.0;          ///< inner cutoff (Taylor-remainder zone [0, dq])
  int nodes_per_panel = 16; ///< Simpson subintervals per geometric panel
  double panel_ratio = 2.0; ///< geometric growth of panel widths

  /// Same weights, geometry re-derived for a target grid (dq = 2 dx, M = 10 L).
  QuadratureConstants rebind(const Grid& g) const {
    QuadratureConstants c = *this;
    c.dq = 2.0 * g.dx;
    c.M = 10.0 * g.L;
    return c;
  }

  static QuadratureConstants geometry_for(const Grid& g) {
    QuadratureConstants c;
    c.dq = 2.0 * g.dx;
    c.M = 10.0 * g.L;
    return c;
  }
};

/// The two one-sided singular integrals (weights not applied):
///   I+[v](x) = int_0^inf (v(x+xi) - v(x) - v'(x) xi) / xi^{1+alpha} dxi
///   I-[v](x) = int_0^inf (v(x-xi) - v(x) + v'(x) xi) / xi^{1+alpha} dxi
/// evaluated by the fixed-node scheme: Taylor remainder on [0, dq] (with
/// finite-difference v'' and v'''), composite Simpson on geometric panels
/// over [dq, M] with 4-tap cubic interpolation and constant far-field
/// extension, and the analytic far-field tail beyond M.
std::pair<GridFunction, GridFunction> one_sided_integrals(
    double alpha, const QuadratureConstants& geom, const GridFunction& f,
    double f_left, double f_right);

/// Singular-integral application c1*I+ + c2*I-.
GridFunction apply_singular(const RieszFellerParams& params,
                            const QuadratureConstants& consts,
                            const GridFunction& f, double f_left, double f_right);

/// Least-squares calibration of (c1, c2) against the spectral representation
/// over Gaussians of widths {0.5, 1, 2} on the calibration grid.  Throws if
/// the worst relative L-inf residual exceeds tol (quadrature misconfigured).
/// Requires 1 < alpha < 2.
QuadratureConstants calibrate_constants(const RieszFellerParams& params, double tol,
                                        const Grid& grid = Grid(220.0, 32768));

/// Worst relative L-inf mismatch of c1*I+ + c2*I- vs the spectral route over
/// the calibration Gaussians on the given grid (the calibration residual).
double cross_representation_residual(const RieszFellerParams& params,
                                     const QuadratureConstants& consts,
                                     const Grid& grid);

}  // namespace rfwave
