#pragma once

#include <vector>

#include "rfwave/field.hpp"
#include "rfwave/params.hpp"

namespace rfwave {

//==== fundamental solution of the nonlocal heat flow =======================

/// Kernel G(x, t): inverse transform of exp(t * psi(k)) on the grid bins.
/// Mass (trapezoid) should sit within eps_mass of 1 on resolved grids;
/// negative excursions beyond -eps_pos indicate truncation ringing.
struct GreenKernel {
  RieszFellerParams params;
  Grid grid;
  double t = 0.0;
  GridFunction values;
  double mass = 0.0;                ///< trapezoid integral over the grid
  double min_value = 0.0;           ///< most negative sample
  double tail_mass_estimate = 0.0;  ///< algebraic-tail mass beyond the grid
  bool under_resolved = false;      ///< |mass - 1| > eps_mass diagnostic flag
};

/// Build the kernel at time t > 0; warns via the under_resolved flag (never
/// throws) when the mass deviates beyond eps_mass.
GreenKernel build_green(const RieszFellerParams& params, const Grid& grid, double t,
                        double eps_mass = 1e-6);

/// Convolution semigroup: spectral multiplication by exp(t psi(k)); t = 0 is
/// the identity.
GridFunction semigroup_apply(const RieszFellerParams& params, double t,
                             const GridFunction& f);

/// Max-norm mismatch between G(. , t) and the rescaled unit-time kernel
/// t^{-1/alpha} G(x t^{-1/alpha}, 1) (cubic interpolation for off-grid
/// samples).  Zero at t = 1 by construction.
double self_similarity_residual(const RieszFellerParams& params, const Grid& grid,
                                double t);

/// Log-log least-squares slope of ||G(., t)||_{L^p} over the given times;
/// the self-similar exponent is -(1/alpha)(1 - 1/p).
double lp_decay_exponent(const RieszFellerParams& params, const Grid& grid,
                         double p, const std::vector<double>& t_samples);

/// Sharp constant sup_k |k|^{l-r} e^{t Re psi(k)} * t^{(l-r)/alpha} of the
/// smoothing estimate between derivative orders r <= l, evaluated on the
/// continuum symbol (closed-form maximizer); t-independent, equals 1 at l = r.
double derivative_smoothing_constant(const RieszFellerParams& params, int l, int r,
                                     double t);

/// Cubic interpolation of a grid function at an arbitrary coordinate with
/// constant extension outside the domain (shared helper).
double interp_cubic(const GridFunction& f, double x);

}  // namespace rfwave
