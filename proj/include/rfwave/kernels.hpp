#pragma once

#include <complex>
#include <cstddef>
#include <string>

namespace rfwave::kernels {

//==== data-parallel kernel table ===========================================
//
// Hot loops (quadrature accumulation, ETD pointwise updates, norm
// reductions) are exposed as flat-array kernels with a scalar reference
// implementation and an AVX2 variant selected at runtime.  All variants
// compute the same quantities; SIMD reductions may differ from scalar by
// round-off reassociation only.

using cplx = std::complex<double>;

struct Ops {
  /// y[i] = a*x[i] + b*y[i]
  void (*axpby)(double a, const double* x, double b, double* y, std::size_t n);
  /// x[i] *= a
  void (*scale)(double* x, double a, std::size_t n);
  /// sum_i x[i]*y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  /// sum_i x[i]^2
  double (*sumsq)(const double* x, std::size_t n);
  /// sum_i x[i]
  double (*sum)(const double* x, std::size_t n);
  /// sum_i |x[i]|
  double (*l1)(const double* x, std::size_t n);
  /// max_i |x[i]|
  double (*max_abs)(const double* x, std::size_t n);
  /// out[i] = a[i]*b[i] (complex pointwise)
  void (*cmul)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
  /// out[i] = a[i] - b[i] (complex)
  void (*csub)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
  /// out[i] = a[i]*b[i] + c[i]*d[i] (complex)
  void (*cfma)(const cplx* a, const cplx* b, const cplx* c, const cplx* d,
               cplx* out, std::size_t n);
  /// out[i] += w[0]*v[i+base] + w[1]*v[i+base+1] + w[2]*v[i+base+2]
  ///           + w[3]*v[i+base+3]   for i in [i0, i1)
  /// Caller guarantees the window stays inside v.
  void (*stencil4_accumulate)(double* out, const double* v, std::ptrdiff_t base,
                              const double w[4], std::size_t i0, std::size_t i1);
};

/// Active kernel table.  Selected once: AVX2+FMA when the CPU supports it,
/// scalar otherwise; the environment variable RFWAVE_SIMD=scalar|avx2
/// overrides (avx2 falls back to scalar if unsupported).
const Ops& ops();

/// Name of the active variant ("scalar" or "avx2"), for diagnostics.
const std::string& active_variant();

/// Reference tables for equivalence testing.
const Ops& scalar_ops();
const Ops& avx2_ops();     // valid only if avx2_supported()
bool avx2_supported();

}  // namespace rfwave::kernels
