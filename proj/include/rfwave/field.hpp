#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "rfwave/grid.hpp"

namespace rfwave {

//==== sampled real field ===================================================

/// Real field sampled on a Grid; all entries finite.
struct GridFunction {
  Grid grid;
  std::vector<double> values;

  GridFunction() = default;
  explicit GridFunction(const Grid& g) : grid(g), values(g.N, 0.0) {}
  GridFunction(const Grid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != g.N)
      throw std::invalid_argument("GridFunction: size mismatch with grid");
  }

  /// Sample an analytic function on the grid.
  static GridFunction sample(const Grid& g, const std::function<double(double)>& f) {
    GridFunction out(g);
    for (int i = 0; i < g.N; ++i) out.values[i] = f(g.x(i));
    return out;
  }

  int size() const { return grid.N; }
  double& operator[](int i) { return values[i]; }
  double operator[](int i) const { return values[i]; }
  double* data() { return values.data(); }
  const double* data() const { return values.data(); }

  bool all_finite() const {
    for (double v : values)
      if (!std::isfinite(v)) return false;
    return true;
  }
};

//==== spectral coefficients ================================================

/// Discrete Fourier coefficients of a GridFunction under the convention
///   coeff[j] = dx * (-1)^j * DFT_j(values),
/// which makes coeff[j] approximate the continuous Fourier transform
/// integral over [-L, L) at wavenumber k_j (the (-1)^j factor accounts for
/// the grid origin at -L).  Hermitian symmetry coeff(-k) = conj(coeff(k))
/// holds whenever the field is real.
struct SpectralField {
  Grid grid;
  std::vector<std::complex<double>> coeff;

  SpectralField() = default;
  explicit SpectralField(const Grid& g) : grid(g), coeff(g.N, {0.0, 0.0}) {}

  int size() const { return grid.N; }
  std::complex<double>& operator[](int j) { return coeff[j]; }
  const std::complex<double>& operator[](int j) const { return coeff[j]; }
};

}  // namespace rfwave
