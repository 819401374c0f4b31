// AVX2 variants. This translation unit is compiled with -mavx2 and must only be
// entered after a runtime CPU check (see kernels_dispatch.cpp).

#include "kernels_impl.hpp"

#include <immintrin.h>

#include <cmath>

namespace neocalc::kernels::detail {
namespace {

inline double hmin(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_min_pd(lo, hi);
  hi = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_min_sd(lo, hi));
}

inline double hmax(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_max_pd(lo, hi);
  hi = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_max_sd(lo, hi));
}

MinMax minmax_avx2(const double* v, std::size_t n) {
  std::size_t i = 0;
  double mn = v[0];
  double mx = v[0];
  if (n >= 4) {
    __m256d vmin = _mm256_loadu_pd(v);
    __m256d vmax = vmin;
    for (i = 4; i + 4 <= n; i += 4) {
      const __m256d x = _mm256_loadu_pd(v + i);
      vmin = _mm256_min_pd(vmin, x);
      vmax = _mm256_max_pd(vmax, x);
    }
    mn = hmin(vmin);
    mx = hmax(vmax);
  }
  for (; i < n; ++i) {
    mn = v[i] < mn ? v[i] : mn;
    mx = v[i] > mx ? v[i] : mx;
  }
  return {mn, mx};
}

double abs_max_avx2(const double* v, std::size_t n) {
  std::size_t i = 0;
  double m = std::fabs(v[0]);
  if (n >= 4) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d vm = _mm256_andnot_pd(sign, _mm256_loadu_pd(v));
    for (i = 4; i + 4 <= n; i += 4) {
      vm = _mm256_max_pd(vm, _mm256_andnot_pd(sign, _mm256_loadu_pd(v + i)));
    }
    m = hmax(vm);
  }
  for (; i < n; ++i) {
    const double a = std::fabs(v[i]);
    m = a > m ? a : m;
  }
  return m;
}

void quotients_avx2(double f0, const double* f, const double* dx, double* out,
                    std::size_t n) {
  std::size_t i = 0;
  const __m256d vf0 = _mm256_set1_pd(f0);
  for (; i + 4 <= n; i += 4) {
    const __m256d num = _mm256_sub_pd(_mm256_loadu_pd(f + i), vf0);
    _mm256_storeu_pd(out + i, _mm256_div_pd(num, _mm256_loadu_pd(dx + i)));
  }
  for (; i < n; ++i) out[i] = (f[i] - f0) / dx[i];
}

void secants_avx2(const double* f_hi, const double* f_lo, const double* width,
                  double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d num =
        _mm256_sub_pd(_mm256_loadu_pd(f_hi + i), _mm256_loadu_pd(f_lo + i));
    _mm256_storeu_pd(out + i, _mm256_div_pd(num, _mm256_loadu_pd(width + i)));
  }
  for (; i < n; ++i) out[i] = (f_hi[i] - f_lo[i]) / width[i];
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2", minmax_avx2, abs_max_avx2,
                                 quotients_avx2, secants_avx2};
  return table;
}

}  // namespace neocalc::kernels::detail
