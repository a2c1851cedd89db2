#include "isogeo/kernels.hpp"

#include <cmath>

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace isogeo::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4),
                           _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double squared_norm_avx2(const double* a, std::size_t n) {
  return dot_avx2(a, a, n);
}

double squared_distance_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(t, t, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

// Planar case: four rows of two doubles per iteration.
double weighted_norm_sum_d2(const double* rows, const double* w,
                            std::size_t count) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256d v01 = _mm256_loadu_pd(rows + 2 * i);
    const __m256d v23 = _mm256_loadu_pd(rows + 2 * i + 4);
    // hadd yields [|r0|^2, |r2|^2, |r1|^2, |r3|^2]
    const __m256d sq = _mm256_hadd_pd(_mm256_mul_pd(v01, v01),
                                      _mm256_mul_pd(v23, v23));
    const __m256d wv = _mm256_set_pd(w[i + 3], w[i + 1], w[i + 2], w[i]);
    acc = _mm256_fmadd_pd(wv, _mm256_sqrt_pd(sq), acc);
  }
  double s = hsum(acc);
  for (; i < count; ++i) {
    const double* r = rows + 2 * i;
    s += w[i] * std::sqrt(r[0] * r[0] + r[1] * r[1]);
  }
  return s;
}

double weighted_norm_sum_avx2(const double* rows, const double* w,
                              std::size_t count, std::size_t d) {
  if (d == 2) return weighted_norm_sum_d2(rows, w, count);
  double s = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    s += w[i] * std::sqrt(squared_norm_avx2(rows + i * d, d));
  }
  return s;
}

constexpr KernelTable kAvx2{dot_avx2, squared_norm_avx2, squared_distance_avx2,
                            axpy_avx2, weighted_norm_sum_avx2};

}  // namespace

const KernelTable* avx2_table() { return &kAvx2; }

}  // namespace isogeo::kernels

#else

namespace isogeo::kernels {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace isogeo::kernels

#endif
