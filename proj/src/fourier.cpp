#include <cmath>
#include <complex>
#include <vector>

#include "rfwave/fft.hpp"
#include "rfwave/fourier.hpp"

namespace rfwave {

SpectralField to_spectral(const GridFunction& f) {
  const Grid& g = f.grid;
  std::vector<std::complex<double>> in(g.N);
  for (int i = 0; i < g.N; ++i) in[i] = f.values[i];
  SpectralField out(g);
  fft::forward(in.data(), out.coeff.data(), g.N);
  for (int j = 0; j < g.N; ++j) {
    double sgn = (j & 1) ? -g.dx : g.dx;
    out.coeff[j] *= sgn;
  }
  return out;
}

GridFunction to_grid(const SpectralField& c, double* max_imag) {
  const Grid& g = c.grid;
  std::vector<std::complex<double>> in(g.N), out(g.N);
  for (int j = 0; j < g.N; ++j) in[j] = (j & 1) ? -c.coeff[j] : c.coeff[j];
  fft::backward(in.data(), out.data(), g.N);
  GridFunction f(g);
  const double norm = 1.0 / (g.N * g.dx);
  double mi = 0.0;
  for (int i = 0; i < g.N; ++i) {
    f.values[i] = out[i].real() * norm;
    mi = std::max(mi, std::abs(out[i].imag()) * norm);
  }
  if (max_imag) *max_imag = mi;
  return f;
}

SpectralField apply_multiplier(const SpectralField& c,
                               const std::function<std::complex<double>(double)>& m) {
  SpectralField out(c.grid);
  for (int j = 0; j < c.grid.N; ++j) out.coeff[j] = m(c.grid.k(j)) * c.coeff[j];
  return out;
}

GridFunction spectral_derivative(const GridFunction& f) {
  SpectralField c = to_spectral(f);
  for (int j = 0; j < c.grid.N; ++j)
    c.coeff[j] *= std::complex<double>(0.0, c.grid.k(j));
  // The Nyquist bin k = -pi N/(2L) has no conjugate partner; zero it so the
  // derivative of a real field stays real.
  c.coeff[c.grid.N / 2] = 0.0;
  return to_grid(c);
}

GridFunction spectral_shift(const GridFunction& f, double delta) {
  SpectralField c = to_spectral(f);
  for (int j = 0; j < c.grid.N; ++j) {
    double kd = c.grid.k(j) * delta;
    c.coeff[j] *= std::complex<double>(std::cos(kd), std::sin(kd));
  }
  // The unpaired Nyquist bin must stay real for a real result; its true
  // translate contributes the cosine factor only.
  int ny = c.grid.N / 2;
  c.coeff[ny] = c.coeff[ny].real();
  return to_grid(c);
}

std::vector<double> dealias_mask(const Grid& g) {
  std::vector<double> mask(g.N, 0.0);
  const double kmax = M_PI / g.L * (g.N / 2);
  for (int j = 0; j < g.N; ++j)
    mask[j] = (std::abs(g.k(j)) <= (2.0 / 3.0) * kmax) ? 1.0 : 0.0;
  return mask;
}

double trig_interp(const SpectralField& c, double x) {
  const int n = c.grid.N;
  double acc = c.coeff[0].real();
  for (int j = 1; j < n / 2; ++j) {
    acc += 2.0 * (c.coeff[j] * std::polar(1.0, c.grid.k(j) * x)).real();
  }
  acc += c.coeff[n / 2].real() * std::cos(c.grid.k(n / 2) * x);
  return acc / (2.0 * c.grid.L);
}

}  // namespace rfwave
