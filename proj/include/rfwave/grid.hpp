#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace rfwave {

//==== uniform truncated-line grid ==========================================

/// Uniform grid on [-L, L) with N points xi_i = -L + i*dx, dx = 2L/N, and
/// wavenumbers k_j = (pi/L) * j for j in {-N/2, ..., N/2 - 1} stored in
/// DFT order (0, 1, ..., N/2-1, -N/2, ..., -1).
struct Grid {
  double L = 0.0;
  int N = 0;
  double dx = 0.0;

  Grid() = default;
  Grid(double half_width, int n_points) : L(half_width), N(n_points) {
    if (!(L > 0.0)) throw std::invalid_argument("Grid: L must be > 0");
    if (N <= 0 || (N % 2) != 0)
      throw std::invalid_argument("Grid: N must be positive and even");
    dx = 2.0 * L / N;
  }

  bool operator==(const Grid& o) const { return L == o.L && N == o.N; }
  bool operator!=(const Grid& o) const { return !(*this == o); }

  /// Physical coordinate of point i.
  double x(int i) const { return -L + i * dx; }

  /// Signed wavenumber of DFT bin j (0 <= j < N).
  double k(int j) const {
    int s = (j < N / 2) ? j : j - N;
    return M_PI / L * s;
  }

  std::vector<double> points() const {
    std::vector<double> xs(N);
    for (int i = 0; i < N; ++i) xs[i] = x(i);
    return xs;
  }

  std::vector<double> wavenumbers() const {
    std::vector<double> ks(N);
    for (int j = 0; j < N; ++j) ks[j] = k(j);
    return ks;
  }
};

}  // namespace rfwave
