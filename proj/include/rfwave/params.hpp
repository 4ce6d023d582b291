#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rfwave {

//==== nonlocal operator parameters =========================================

/// Order/skewness pair (alpha, theta) of the Riesz-Feller operator with
/// Fourier symbol -|k|^alpha (cos(theta*pi/2) + i sgn(k) sin(theta*pi/2)).
/// Admissible iff |theta| <= min(alpha, 2-alpha); the evolution solver
/// additionally requires alpha > 1.
struct RieszFellerParams {
  double alpha = 2.0;
  double theta = 0.0;

  RieszFellerParams() = default;
  RieszFellerParams(double a, double th) : alpha(a), theta(th) {
    if (!(alpha > 0.0) || !(alpha <= 2.0))
      throw std::invalid_argument("RieszFellerParams: alpha must be in (0,2]");
    if (std::abs(theta) > std::min(alpha, 2.0 - alpha) + 1e-14)
      throw std::invalid_argument(
          "RieszFellerParams: |theta| must be <= min(alpha, 2-alpha)");
  }

  /// True when the evolution solver may use these parameters.
  bool solver_admissible() const { return alpha > 1.0; }

  /// cos(theta*pi/2), the dissipation strength factor; positive whenever
  /// alpha > 1 by admissibility (asserted at construction via the bound).
  double cos_factor() const { return std::cos(theta * M_PI / 2.0); }
  double sin_factor() const { return std::sin(theta * M_PI / 2.0); }
};

//==== flux =================================================================

/// Convex flux f with derivatives; normalized so f(0) = 0.
/// Presets: Burgers f(u) = u^2 and general convex polynomials.
struct FluxFunction {
  std::function<double(double)> f, fp, fpp;
  std::string name;

  double operator()(double u) const { return f(u); }

  static FluxFunction burgers() {
    return {[](double u) { return u * u; },
            [](double u) { return 2.0 * u; },
            [](double) { return 2.0; },
            "burgers"};
  }

  /// Polynomial sum c_j u^j, j = 1..deg (constant term 0 by normalization).
  /// Convexity on the working range is the caller's responsibility and is
  /// checked by WaveData construction.
  static FluxFunction polynomial(const std::vector<double>& coeff) {
    return {[coeff](double u) {
              double acc = 0.0;
              for (std::size_t j = coeff.size(); j-- > 0;) acc = acc * u + coeff[j];
              return acc * u;  // sum_{j>=1} c_j u^j with coeff[j-1] = c_j
            },
            [coeff](double u) {
              double acc = 0.0;
              for (std::size_t j = coeff.size(); j-- > 0;)
                acc = acc * u + static_cast<double>(j + 1) * coeff[j];
              return acc;
            },
            [coeff](double u) {
              double acc = 0.0;
              for (std::size_t j = coeff.size(); j-- > 1;)
                acc = acc * u + static_cast<double>(j + 1) * j * coeff[j];
              return acc;
            },
            "polynomial"};
  }
};

//==== wave data ============================================================

/// Endstates u_minus > u_plus and the jump-condition speed
/// s = (f(u_plus) - f(u_minus)) / (u_plus - u_minus).
struct WaveData {
  double u_minus = 1.0;
  double u_plus = 0.0;
  double s = 1.0;

  WaveData() = default;
  WaveData(const FluxFunction& f, double um, double up) : u_minus(um), u_plus(up) {
    if (um == up) throw std::invalid_argument("WaveData: endstates must differ");
    if (!(up < um))
      throw std::invalid_argument("WaveData: requires u_plus < u_minus");
    s = (f(up) - f(um)) / (up - um);
    // Convexity of f on the working range, sampled densely.
    for (int i = 0; i <= 64; ++i) {
      double u = up + (um - up) * i / 64.0;
      if (f.fpp(u) < -1e-12)
        throw std::invalid_argument("WaveData: flux not convex on [u_plus,u_minus]");
    }
  }

  double mid() const { return 0.5 * (u_minus + u_plus); }
  double half() const { return 0.5 * (u_minus - u_plus); }
};

/// Jump-condition speed as a free function (exact quotient).
inline double rankine_hugoniot(const FluxFunction& f, double um, double up) {
  if (um == up) throw std::invalid_argument("rankine_hugoniot: equal endstates");
  return (f(up) - f(um)) / (up - um);
}

}  // namespace rfwave
