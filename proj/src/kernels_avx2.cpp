// AVX2 + FMA variants. This translation unit is the only one compiled with
// -mavx2 -mfma; nothing here may run before avx2() has confirmed support.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "kernels_impl.hpp"

namespace fslsense::kernels::detail {
namespace {

constexpr std::size_t kLanes = 4;

inline double hsum(__m256d x) {
  const __m128d lo = _mm256_castpd256_pd128(x);
  const __m128d hi = _mm256_extractf128_pd(x, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d x) {
  const __m128d lo = _mm256_castpd256_pd128(x);
  const __m128d hi = _mm256_extractf128_pd(x, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

inline double hmin(__m256d x) {
  const __m128d lo = _mm256_castpd256_pd128(x);
  const __m128d hi = _mm256_extractf128_pd(x, 1);
  const __m128d m = _mm_min_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_min_sd(m, _mm_unpackhi_pd(m, m)));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 * kLanes <= n; i += 2 * kLanes) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + kLanes),
                           _mm256_loadu_pd(y + i + kLanes), acc1);
  }
  for (; i + kLanes <= n; i += kLanes)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double sum_squares_avx2(const double* x, std::size_t n) {
  return dot_avx2(x, x, n);
}

double max_abs_avx2(const double* x, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    m = _mm256_max_pd(m, _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i)));
  double r = hmax(m);
  for (; i < n; ++i) r = std::max(r, std::fabs(x[i]));
  return r;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

void scale_avx2(double a, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

void band3_apply_avx2(const double* v, const double* w, const double* t,
                      const double* u, double* out, std::size_t rows) {
  if (rows == 0) return;
  out[0] = v[0] * u[1] + w[0] * u[0];
  std::size_t r = 1;
  for (; r + kLanes <= rows; r += kLanes) {
    __m256d s = _mm256_mul_pd(_mm256_loadu_pd(v + r), _mm256_loadu_pd(u + r + 1));
    s = _mm256_fmadd_pd(_mm256_loadu_pd(w + r), _mm256_loadu_pd(u + r), s);
    s = _mm256_fmadd_pd(_mm256_loadu_pd(t + r), _mm256_loadu_pd(u + r - 1), s);
    _mm256_storeu_pd(out + r, s);
  }
  for (; r < rows; ++r) out[r] = v[r] * u[r + 1] + w[r] * u[r] + t[r] * u[r - 1];
}

double bloch_eval_avx2(double v, double w, double t, const double* cos1,
                       const double* sin1, const double* cos2,
                       const double* sin2, double* re, double* im,
                       std::size_t n) {
  const __m256d vv = _mm256_set1_pd(v);
  const __m256d vw = _mm256_set1_pd(w);
  const __m256d vt = _mm256_set1_pd(t);
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d mn = _mm256_set1_pd(INFINITY);
  std::size_t j = 0;
  for (; j + kLanes <= n; j += kLanes) {
    const __m256d a = _mm256_fmadd_pd(
        vt, _mm256_loadu_pd(cos2 + j),
        _mm256_fmadd_pd(vw, _mm256_loadu_pd(cos1 + j), vv));
    const __m256d b = _mm256_xor_pd(
        sign, _mm256_fmadd_pd(vt, _mm256_loadu_pd(sin2 + j),
                              _mm256_mul_pd(vw, _mm256_loadu_pd(sin1 + j))));
    _mm256_storeu_pd(re + j, a);
    _mm256_storeu_pd(im + j, b);
    mn = _mm256_min_pd(mn, _mm256_fmadd_pd(a, a, _mm256_mul_pd(b, b)));
  }
  double min_mod2 = hmin(mn);
  for (; j < n; ++j) {
    const double a = v + w * cos1[j] + t * cos2[j];
    const double b = -(w * sin1[j] + t * sin2[j]);
    re[j] = a;
    im[j] = b;
    min_mod2 = std::min(min_mod2, a * a + b * b);
  }
  return min_mod2;
}

void phase_steps_avx2(const double* re, const double* im, double* dots,
                      double* crosses, std::size_t n) {
  if (n < 2) return;
  const std::size_t steps = n - 1;
  std::size_t j = 0;
  for (; j + kLanes <= steps; j += kLanes) {
    const __m256d r0 = _mm256_loadu_pd(re + j);
    const __m256d i0 = _mm256_loadu_pd(im + j);
    const __m256d r1 = _mm256_loadu_pd(re + j + 1);
    const __m256d i1 = _mm256_loadu_pd(im + j + 1);
    _mm256_storeu_pd(dots + j, _mm256_fmadd_pd(r1, r0, _mm256_mul_pd(i1, i0)));
    _mm256_storeu_pd(crosses + j, _mm256_fmsub_pd(i1, r0, _mm256_mul_pd(r1, i0)));
  }
  for (; j < steps; ++j) {
    dots[j] = re[j + 1] * re[j] + im[j + 1] * im[j];
    crosses[j] = im[j + 1] * re[j] - re[j + 1] * im[j];
  }
}

double fisher_sum_avx2(const double* p, const double* dp, const double* du,
                       double floor, std::size_t n) {
  const __m256d vfloor = _mm256_set1_pd(floor);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + kLanes <= n; j += kLanes) {
    const __m256d vp = _mm256_loadu_pd(p + j);
    const __m256d vdp = _mm256_loadu_pd(dp + j);
    const __m256d vdu = _mm256_loadu_pd(du + j);
    const __m256d small = _mm256_cmp_pd(vp, vfloor, _CMP_LT_OQ);
    // Masked lanes divide by 1 instead of a possibly zero probability.
    const __m256d denom = _mm256_blendv_pd(vp, one, small);
    const __m256d ratio = _mm256_div_pd(_mm256_mul_pd(vdp, vdp), denom);
    const __m256d limit = _mm256_mul_pd(four, _mm256_mul_pd(vdu, vdu));
    acc = _mm256_add_pd(acc, _mm256_blendv_pd(ratio, limit, small));
  }
  double s = hsum(acc);
  for (; j < n; ++j) {
    if (p[j] < floor)
      s += 4.0 * du[j] * du[j];
    else
      s += dp[j] * dp[j] / p[j];
  }
  return s;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{
      "avx2",           dot_avx2,         sum_squares_avx2,
      max_abs_avx2,     axpy_avx2,        scale_avx2,
      band3_apply_avx2, bloch_eval_avx2,  phase_steps_avx2,
      fisher_sum_avx2,
  };
  return table;
}

}  // namespace fslsense::kernels::detail
