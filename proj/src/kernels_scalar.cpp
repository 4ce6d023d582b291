#include <cmath>
#include <cstddef>

#include "rfwave/kernels.hpp"

namespace rfwave::kernels {

//==== scalar reference implementations =====================================

namespace scalar {

static void axpby(double a, const double* x, double b, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

static void scale(double* x, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

static double dot(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

static double sumsq(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

static double sum(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

static double l1(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::abs(x[i]);
  return acc;
}

static double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

static void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

static void csub(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

static void cfma(const cplx* a, const cplx* b, const cplx* c, const cplx* d,
                 cplx* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i] + c[i] * d[i];
}

static void stencil4_accumulate(double* out, const double* v, std::ptrdiff_t base,
                                const double w[4], std::size_t i0, std::size_t i1) {
  const double w0 = w[0], w1 = w[1], w2 = w[2], w3 = w[3];
  for (std::size_t i = i0; i < i1; ++i) {
    const double* p = v + static_cast<std::ptrdiff_t>(i) + base;
    out[i] += w0 * p[0] + w1 * p[1] + w2 * p[2] + w3 * p[3];
  }
}

}  // namespace scalar

const Ops& scalar_ops() {
  static const Ops table = {
      scalar::axpby, scalar::scale,   scalar::dot,
      scalar::sumsq, scalar::sum,     scalar::l1,
      scalar::max_abs, scalar::cmul,  scalar::csub,
      scalar::cfma,  scalar::stencil4_accumulate,
  };
  return table;
}

}  // namespace rfwave::kernels
