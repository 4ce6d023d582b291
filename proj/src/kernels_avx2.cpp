#include <cmath>
#include <cstddef>
#include <immintrin.h>

#include "rfwave/kernels.hpp"

// This translation unit is compiled with -mavx2 -mfma; callers reach it only
// through the dispatch table after a runtime cpuid check.

namespace rfwave::kernels {

namespace avx2 {

static inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

static void axpby(double a, const double* x, double b, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a), vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    __m256d vx = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, vx, _mm256_mul_pd(vb, vy)));
  }
  for (; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

static void scale(double* x, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

static double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  double tail = 0.0;
  for (; i < n; ++i) tail += x[i] * y[i];
  return hsum(acc) + tail;
}

static double sumsq(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += x[i] * x[i];
  return hsum(acc) + tail;
}

static double sum(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double tail = 0.0;
  for (; i < n; ++i) tail += x[i];
  return hsum(acc) + tail;
}

static double l1(const double* x, std::size_t n) {
  const __m256d mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(mask, _mm256_loadu_pd(x + i)));
  double tail = 0.0;
  for (; i < n; ++i) tail += std::abs(x[i]);
  return hsum(acc) + tail;
}

static double max_abs(const double* x, std::size_t n) {
  const __m256d mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_max_pd(acc, _mm256_andnot_pd(mask, _mm256_loadu_pd(x + i)));
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  lo = _mm_max_pd(lo, hi);
  double m = _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
  for (; i < n; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

// Complex arrays are interleaved (re, im) pairs; two complex values per
// 256-bit lane pair.  For a*b: (ar*br - ai*bi, ar*bi + ai*br).
static inline __m256d cmul_pd(__m256d a, __m256d b) {
  __m256d b_swap = _mm256_permute_pd(b, 0x5);           // (bi, br) per complex
  __m256d a_re = _mm256_movedup_pd(a);                  // (ar, ar)
  __m256d a_im = _mm256_permute_pd(a, 0xF);             // (ai, ai)
  return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_swap));
}

static void cmul(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  double* po = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d va = _mm256_loadu_pd(pa + 2 * i);
    __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    _mm256_storeu_pd(po + 2 * i, cmul_pd(va, vb));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

static void csub(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  double* po = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    _mm256_storeu_pd(po + 2 * i, _mm256_sub_pd(_mm256_loadu_pd(pa + 2 * i),
                                               _mm256_loadu_pd(pb + 2 * i)));
  for (; i < n; ++i) out[i] = a[i] - b[i];
}

static void cfma(const cplx* a, const cplx* b, const cplx* c, const cplx* d,
                 cplx* out, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  const double* pc = reinterpret_cast<const double*>(c);
  const double* pd = reinterpret_cast<const double*>(d);
  double* po = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d ab = cmul_pd(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i));
    __m256d cd = cmul_pd(_mm256_loadu_pd(pc + 2 * i), _mm256_loadu_pd(pd + 2 * i));
    _mm256_storeu_pd(po + 2 * i, _mm256_add_pd(ab, cd));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i] + c[i] * d[i];
}

static void stencil4_accumulate(double* out, const double* v, std::ptrdiff_t base,
                                const double w[4], std::size_t i0, std::size_t i1) {
  const __m256d w0 = _mm256_set1_pd(w[0]), w1 = _mm256_set1_pd(w[1]);
  const __m256d w2 = _mm256_set1_pd(w[2]), w3 = _mm256_set1_pd(w[3]);
  std::size_t i = i0;
  for (; i + 4 <= i1; i += 4) {
    const double* p = v + static_cast<std::ptrdiff_t>(i) + base;
    __m256d acc = _mm256_loadu_pd(out + i);
    acc = _mm256_fmadd_pd(w0, _mm256_loadu_pd(p + 0), acc);
    acc = _mm256_fmadd_pd(w1, _mm256_loadu_pd(p + 1), acc);
    acc = _mm256_fmadd_pd(w2, _mm256_loadu_pd(p + 2), acc);
    acc = _mm256_fmadd_pd(w3, _mm256_loadu_pd(p + 3), acc);
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i < i1; ++i) {
    const double* p = v + static_cast<std::ptrdiff_t>(i) + base;
    out[i] += w[0] * p[0] + w[1] * p[1] + w[2] * p[2] + w[3] * p[3];
  }
}

}  // namespace avx2

const Ops& avx2_ops() {
  static const Ops table = {
      avx2::axpby, avx2::scale,   avx2::dot,
      avx2::sumsq, avx2::sum,     avx2::l1,
      avx2::max_abs, avx2::cmul,  avx2::csub,
      avx2::cfma,  avx2::stencil4_accumulate,
  };
  return table;
}

}  // namespace rfwave::kernels
