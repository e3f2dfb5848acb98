// AVX2 + FMA variants. Compiled with -mavx2 -mfma; only reached through the
// dispatch table after a cpuid check.

#include <immintrin.h>

#include "qwsearch/kernels.hpp"

namespace qws::kernels::avx2 {

namespace {

// [v0, v1] -> [v0, v0, v1, v1]
inline __m256d splat_pairs(const double* v) {
  const __m128d vv = _mm_loadu_pd(v);
  return _mm256_permute4x64_pd(_mm256_castpd128_pd256(vv), 0b01010000);
}

inline double hsum_even(__m256d x) {
  alignas(32) double t[4];
  _mm256_store_pd(t, x);
  return t[0] + t[2];
}

inline double hsum_odd(__m256d x) {
  alignas(32) double t[4];
  _mm256_store_pd(t, x);
  return t[1] + t[3];
}

}  // namespace

void rc_axpy(std::size_t n, const double* v, cplx a, cplx* y) {
  auto* yd = reinterpret_cast<double*>(y);
  const __m256d av = _mm256_setr_pd(a.real(), a.imag(), a.real(), a.imag());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d y0 = _mm256_loadu_pd(yd + 2 * i);
    __m256d y1 = _mm256_loadu_pd(yd + 2 * i + 4);
    y0 = _mm256_fmadd_pd(splat_pairs(v + i), av, y0);
    y1 = _mm256_fmadd_pd(splat_pairs(v + i + 2), av, y1);
    _mm256_storeu_pd(yd + 2 * i, y0);
    _mm256_storeu_pd(yd + 2 * i + 4, y1);
  }
  for (; i + 2 <= n; i += 2) {
    __m256d y0 = _mm256_loadu_pd(yd + 2 * i);
    y0 = _mm256_fmadd_pd(splat_pairs(v + i), av, y0);
    _mm256_storeu_pd(yd + 2 * i, y0);
  }
  for (; i < n; ++i) {
    yd[2 * i] += a.real() * v[i];
    yd[2 * i + 1] += a.imag() * v[i];
  }
}

cplx rc_dot(std::size_t n, const double* v, const cplx* x) {
  const auto* xd = reinterpret_cast<const double*>(x);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(splat_pairs(v + i), _mm256_loadu_pd(xd + 2 * i), acc0);
    acc1 = _mm256_fmadd_pd(splat_pairs(v + i + 2), _mm256_loadu_pd(xd + 2 * i + 4), acc1);
  }
  for (; i + 2 <= n; i += 2) {
    acc0 = _mm256_fmadd_pd(splat_pairs(v + i), _mm256_loadu_pd(xd + 2 * i), acc0);
  }
  const __m256d acc = _mm256_add_pd(acc0, acc1);
  double re = hsum_even(acc);
  double im = hsum_odd(acc);
  for (; i < n; ++i) {
    re += v[i] * xd[2 * i];
    im += v[i] * xd[2 * i + 1];
  }
  return {re, im};
}

void c_mul(std::size_t n, const cplx* a, cplx* y) {
  const auto* ad = reinterpret_cast<const double*>(a);
  auto* yd = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d av = _mm256_loadu_pd(ad + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    const __m256d are = _mm256_movedup_pd(av);         // ar ar
    const __m256d aim = _mm256_permute_pd(av, 0b1111);  // ai ai
    const __m256d ysw = _mm256_permute_pd(yv, 0b0101);  // yi yr
    // even lanes: ar*yr - ai*yi, odd lanes: ar*yi + ai*yr
    const __m256d r = _mm256_fmaddsub_pd(are, yv, _mm256_mul_pd(aim, ysw));
    _mm256_storeu_pd(yd + 2 * i, r);
  }
  for (; i < n; ++i) {
    const double ar = ad[2 * i], ai = ad[2 * i + 1];
    const double yr = yd[2 * i], yi = yd[2 * i + 1];
    yd[2 * i] = ar * yr - ai * yi;
    yd[2 * i + 1] = ar * yi + ai * yr;
  }
}

double c_norm2(std::size_t n, const cplx* x) {
  const auto* xd = reinterpret_cast<const double*>(x);
  const std::size_t m = 2 * n;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= m; i += 8) {
    const __m256d a = _mm256_loadu_pd(xd + i);
    const __m256d b = _mm256_loadu_pd(xd + i + 4);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  for (; i + 4 <= m; i += 4) {
    const __m256d a = _mm256_loadu_pd(xd + i);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
  }
  const __m256d acc = _mm256_add_pd(acc0, acc1);
  double s = hsum_even(acc) + hsum_odd(acc);
  for (; i < m; ++i) s += xd[i] * xd[i];
  return s;
}

}  // namespace qws::kernels::avx2
