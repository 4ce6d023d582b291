#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "rfwave/field.hpp"

namespace rfwave {

//==== grid <-> spectral transforms (frozen convention) =====================
//
//   coeff[j] = dx * (-1)^j * DFT_j(values)          (forward)
//   values[i] = (1/(N dx)) Re sum_j (-1)^j coeff[j] e^{+2 pi i ij/N}
//
// coeff[j] approximates the continuous Fourier integral of the field over
// [-L, L) at k_j = (pi/L)*signed(j); the (-1)^j factor carries the grid
// origin phase e^{+i k_j L}.  Discrete Plancherel identity:
//   sum_i f_i^2 dx = (1/(2L)) sum_j |coeff[j]|^2.

/// Forward transform of a real field.
SpectralField to_spectral(const GridFunction& f);

/// Inverse transform; returns the real part.  If max_imag is non-null it
/// receives the largest |imaginary part| encountered (round-off monitor).
GridFunction to_grid(const SpectralField& c, double* max_imag = nullptr);

/// Pointwise spectral multiplier application: out[j] = m(k_j) * coeff[j].
SpectralField apply_multiplier(const SpectralField& c,
                               const std::function<std::complex<double>(double)>& m);

/// Spectral derivative d/dxi (multiplier ik).
GridFunction spectral_derivative(const GridFunction& f);

/// Translate by delta: f(xi) -> f(xi + delta), exact for the trigonometric
/// interpolant (multiplier e^{+ik delta}).
GridFunction spectral_shift(const GridFunction& f, double delta);

/// Two-thirds dealiasing mask in DFT bin order: 1.0 where |k_j| <= (2/3) k_max.
std::vector<double> dealias_mask(const Grid& g);

/// Evaluates the trigonometric interpolant of c at an arbitrary point x
/// (real part; the Nyquist mode contributes through its cosine).
double trig_interp(const SpectralField& c, double x);

}  // namespace rfwave
