#include "sphereflow/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace sphereflow::kernels {
namespace {

constexpr double kExpClamp = 700.0;

// Vector exp for 4 doubles, Cephes-style: reduce x = n*ln2 + r with
// |r| <= ln2/2, evaluate e^r by the rational approximation
//   e^r = 1 + 2 r P(r^2) / (Q(r^2) - r P(r^2)),
// then scale by 2^n through direct exponent-field injection. Inputs must be
// pre-clamped to [-700, 700]; accuracy is ~1 ulp on that range.
inline __m256d exp4(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
  const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);
  const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
  const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
  const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
  const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
  const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
  const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
  const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);

  const __m256d nf = _mm256_round_pd(
      _mm256_mul_pd(x, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(nf, ln2_hi, x);
  r = _mm256_fnmadd_pd(nf, ln2_lo, r);

  const __m256d rr = _mm256_mul_pd(r, r);
  __m256d p = _mm256_fmadd_pd(p0, rr, p1);
  p = _mm256_fmadd_pd(p, rr, p2);
  p = _mm256_mul_pd(p, r);
  __m256d q = _mm256_fmadd_pd(q0, rr, q1);
  q = _mm256_fmadd_pd(q, rr, q2);
  q = _mm256_fmadd_pd(q, rr, q3);
  const __m256d er =
      _mm256_fmadd_pd(two, _mm256_div_pd(p, _mm256_sub_pd(q, p)), one);

  // 2^n: n fits in int32 after the clamp.
  const __m128i n32 = _mm256_cvtpd_epi32(nf);
  const __m256i n64 = _mm256_cvtepi32_epi64(n32);
  const __m256i biased = _mm256_add_epi64(n64, _mm256_set1_epi64x(1023));
  const __m256d scale = _mm256_castsi256_pd(_mm256_slli_epi64(biased, 52));
  return _mm256_mul_pd(er, scale);
}

inline __m256d clamp4(__m256d x) {
  const __m256d lo = _mm256_set1_pd(-kExpClamp);
  const __m256d hi = _mm256_set1_pd(kExpClamp);
  return _mm256_min_pd(_mm256_max_pd(x, lo), hi);
}

inline double clamped_exp(double x) {
  return std::exp(std::clamp(x, -kExpClamp, kExpClamp));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void exp_scale_avx2(const double* x, std::size_t n, double alpha, double* y) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = clamp4(_mm256_mul_pd(_mm256_loadu_pd(x + i), a));
    _mm256_storeu_pd(y + i, exp4(v));
  }
  for (; i < n; ++i) y[i] = clamped_exp(alpha * x[i]);
}

double weighted_exp2_sum_avx2(const double* u, const double* w,
                              std::size_t n) {
  const __m256d two = _mm256_set1_pd(2.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d e = exp4(clamp4(_mm256_mul_pd(_mm256_loadu_pd(u + i), two)));
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), e, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += w[i] * clamped_exp(2.0 * u[i]);
  return s;
}

double triple_dot_avx2(const double* a, const double* b, const double* c,
                       std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ab =
        _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(ab, _mm256_loadu_pd(c + i), acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += a[i] * b[i] * c[i];
  return s;
}

void gaussian_curvature_avx2(const double* u, const double* cot_theta,
                             std::size_t n, double inv_h2, double inv_2h,
                             double* k) {
  const __m256d vih2 = _mm256_set1_pd(inv_h2);
  const __m256d vi2h = _mm256_set1_pd(inv_2h);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d mtwo = _mm256_set1_pd(-2.0);

  auto end_node = [&](std::size_t i) {
    const double um = (i == 0) ? u[0] : u[i - 1];
    const double up = (i + 1 == n) ? u[n - 1] : u[i + 1];
    const double lap =
        (up + um - 2.0 * u[i]) * inv_h2 + cot_theta[i] * (up - um) * inv_2h;
    k[i] = clamped_exp(-2.0 * u[i]) * (1.0 - lap);
  };

  end_node(0);
  std::size_t i = 1;
  for (; i + 4 <= n - 1; i += 4) {
    const __m256d uc = _mm256_loadu_pd(u + i);
    const __m256d um = _mm256_loadu_pd(u + i - 1);
    const __m256d up = _mm256_loadu_pd(u + i + 1);
    const __m256d d2 = _mm256_mul_pd(
        _mm256_add_pd(_mm256_add_pd(up, um), _mm256_mul_pd(mtwo, uc)), vih2);
    const __m256d d1 = _mm256_mul_pd(_mm256_sub_pd(up, um), vi2h);
    const __m256d lap =
        _mm256_fmadd_pd(_mm256_loadu_pd(cot_theta + i), d1, d2);
    const __m256d e = exp4(clamp4(_mm256_mul_pd(uc, mtwo)));
    _mm256_storeu_pd(k + i, _mm256_mul_pd(e, _mm256_sub_pd(one, lap)));
  }
  for (; i < n; ++i) end_node(i);
}

void axpby_avx2(const double* u, const double* k, std::size_t n, double a,
                double* y) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(
        y + i,
        _mm256_fmadd_pd(va, _mm256_loadu_pd(k + i), _mm256_loadu_pd(u + i)));
  }
  for (; i < n; ++i) y[i] = u[i] + a * k[i];
}

void rk4_combine_avx2(const double* u, const double* k1, const double* k2,
                      const double* k3, const double* k4, std::size_t n,
                      double dt, double* y) {
  const double c = dt / 6.0;
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d s = _mm256_add_pd(_mm256_loadu_pd(k1 + i), _mm256_loadu_pd(k4 + i));
    s = _mm256_fmadd_pd(two, _mm256_loadu_pd(k2 + i), s);
    s = _mm256_fmadd_pd(two, _mm256_loadu_pd(k3 + i), s);
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vc, s, _mm256_loadu_pd(u + i)));
  }
  for (; i < n; ++i)
    y[i] = u[i] + c * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

void shift_avx2(double* u, std::size_t n, double c) {
  const __m256d vc = _mm256_set1_pd(c);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(u + i, _mm256_add_pd(_mm256_loadu_pd(u + i), vc));
  for (; i < n; ++i) u[i] += c;
}

double min_value_avx2(const double* x, std::size_t n) {
  std::size_t i = 0;
  double m = x[0];
  if (n >= 4) {
    __m256d acc = _mm256_loadu_pd(x);
    for (i = 4; i + 4 <= n; i += 4)
      acc = _mm256_min_pd(acc, _mm256_loadu_pd(x + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    m = std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
  }
  for (; i < n; ++i) m = std::min(m, x[i]);
  return m;
}

double max_value_avx2(const double* x, std::size_t n) {
  std::size_t i = 0;
  double m = x[0];
  if (n >= 4) {
    __m256d acc = _mm256_loadu_pd(x);
    for (i = 4; i + 4 <= n; i += 4)
      acc = _mm256_max_pd(acc, _mm256_loadu_pd(x + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  }
  for (; i < n; ++i) m = std::max(m, x[i]);
  return m;
}

double max_abs_avx2(const double* x, std::size_t n) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_max_pd(acc,
                        _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(x + i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double m = std::max(std::max(lanes[0], lanes[1]),
                      std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

}  // namespace

extern const KernelTable avx2_table = {
    exp_scale_avx2,    weighted_exp2_sum_avx2,
    triple_dot_avx2,   gaussian_curvature_avx2,
    axpby_avx2,        rk4_combine_avx2,
    shift_avx2,        min_value_avx2,
    max_value_avx2,    max_abs_avx2,
};

}  // namespace sphereflow::kernels

#endif  // __AVX2__ && __FMA__
