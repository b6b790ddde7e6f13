// AVX2/FMA kernels. Reductions use 4-lane accumulators (summation order
// differs from the scalar reference, equivalence is tolerance-tested).
// Elementwise primitives deliberately avoid FMA so they round exactly like
// the scalar reference and stay bit-identical across backends.
//
// vlog/vexp follow the classic Cephes double-precision argument reduction +
// rational approximation (peak error a couple of ulp). Lanes outside the
// fast-path domain (non-normal, non-positive, |x| huge) fall back to libm.

#include <immintrin.h>

#include <cfloat>
#include <cmath>
#include <cstddef>
#include <cstdint>

#include "table.hpp"

namespace gmcons::kernels::detail {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d swap = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, swap));
}

// int64 lanes in (-2^51, 2^51) to double lanes.
inline __m256d i64_to_f64(__m256i v) {
  const __m256i magic = _mm256_set1_epi64x(0x4338000000000000LL);  // 2^52 + 2^51
  __m256i shifted = _mm256_add_epi64(v, magic);
  return _mm256_sub_pd(_mm256_castsi256_pd(shifted), _mm256_castsi256_pd(magic));
}

// ---------------------------------------------------------------------------
// log, 4 lanes; valid for normal positive finite inputs
// ---------------------------------------------------------------------------

inline __m256d log4(__m256d x) {
  const __m256d one = _mm256_set1_pd(1.0);

  // frexp: x = m * 2^e with m in [0.5, 1)
  __m256i bits = _mm256_castpd_si256(x);
  __m256i biased = _mm256_and_si256(_mm256_srli_epi64(bits, 52), _mm256_set1_epi64x(0x7FF));
  __m256d e = i64_to_f64(_mm256_sub_epi64(biased, _mm256_set1_epi64x(1022)));
  __m256i mbits = _mm256_or_si256(
      _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
      _mm256_set1_epi64x(0x3FE0000000000000LL));
  __m256d m = _mm256_castsi256_pd(mbits);

  // below sqrt(1/2) use 2m and decrement the exponent
  const __m256d sqrth = _mm256_set1_pd(0.70710678118654752440);
  __m256d low = _mm256_cmp_pd(m, sqrth, _CMP_LT_OQ);
  e = _mm256_sub_pd(e, _mm256_and_pd(low, one));
  __m256d t = _mm256_blendv_pd(_mm256_sub_pd(m, one),
                               _mm256_sub_pd(_mm256_add_pd(m, m), one), low);

  // log(1+t) = t - t^2/2 + t^3 P(t)/Q(t)
  __m256d p = _mm256_set1_pd(1.01875663804580931796e-4);
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(4.97494994976747001425e-1));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(4.70579119878881725854e0));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.44989225341610930846e1));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.79368678507819816313e1));
  p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(7.70838733755885391666e0));

  __m256d q = _mm256_add_pd(t, _mm256_set1_pd(1.12873587189167450590e1));
  q = _mm256_fmadd_pd(q, t, _mm256_set1_pd(4.52279145837532221105e1));
  q = _mm256_fmadd_pd(q, t, _mm256_set1_pd(8.29875266912776603211e1));
  q = _mm256_fmadd_pd(q, t, _mm256_set1_pd(7.11544750618563894466e1));
  q = _mm256_fmadd_pd(q, t, _mm256_set1_pd(2.31251620126765340583e1));

  __m256d t2 = _mm256_mul_pd(t, t);
  __m256d y = _mm256_mul_pd(_mm256_mul_pd(t, t2), _mm256_div_pd(p, q));

  // assemble with the split ln(2) = 0.693359375 - 2.1219444e-4
  y = _mm256_fnmadd_pd(e, _mm256_set1_pd(2.121944400546905827679e-4), y);
  y = _mm256_fnmadd_pd(_mm256_set1_pd(0.5), t2, y);
  y = _mm256_add_pd(y, t);
  y = _mm256_fmadd_pd(e, _mm256_set1_pd(0.693359375), y);
  return y;
}

// ---------------------------------------------------------------------------
// exp, 4 lanes; valid for |x| < 708
// ---------------------------------------------------------------------------

inline __m256d exp4(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);

  __m256d k = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                              _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  // r = x - k*ln2, split constant for accuracy
  __m256d r = _mm256_fnmadd_pd(k, _mm256_set1_pd(6.93145751953125e-1), x);
  r = _mm256_fnmadd_pd(k, _mm256_set1_pd(1.42860682030941723212e-6), r);

  __m256d r2 = _mm256_mul_pd(r, r);
  __m256d p = _mm256_set1_pd(1.26177193074810590878e-4);
  p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(3.02994407707441961300e-2));
  p = _mm256_fmadd_pd(p, r2, _mm256_set1_pd(9.99999999999999999910e-1));
  p = _mm256_mul_pd(p, r);

  __m256d q = _mm256_set1_pd(3.00198505138664455042e-6);
  q = _mm256_fmadd_pd(q, r2, _mm256_set1_pd(2.52448340349684104192e-3));
  q = _mm256_fmadd_pd(q, r2, _mm256_set1_pd(2.27265548208155028766e-1));
  q = _mm256_fmadd_pd(q, r2, _mm256_set1_pd(2.00000000000000000005e0));

  __m256d res = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  res = _mm256_fmadd_pd(_mm256_set1_pd(2.0), res, _mm256_set1_pd(1.0));

  // scale by 2^k via the exponent field; |k| <= 1022 here
  __m128i k32 = _mm256_cvtpd_epi32(k);
  __m256i k64 = _mm256_cvtepi32_epi64(k32);
  __m256i pow2 = _mm256_slli_epi64(_mm256_add_epi64(k64, _mm256_set1_epi64x(1023)), 52);
  return _mm256_mul_pd(res, _mm256_castsi256_pd(pow2));
}

// ---------------------------------------------------------------------------

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i];
  return s;
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void minmax_avx2(const double* x, std::size_t n, double* mn, double* mx) {
  if (n < 4) {
    double lo = x[0], hi = x[0];
    for (std::size_t i = 1; i < n; ++i) {
      if (x[i] < lo) lo = x[i];
      if (x[i] > hi) hi = x[i];
    }
    *mn = lo;
    *mx = hi;
    return;
  }
  __m256d vlo = _mm256_loadu_pd(x);
  __m256d vhi = vlo;
  std::size_t i = 4;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    vlo = _mm256_min_pd(vlo, v);
    vhi = _mm256_max_pd(vhi, v);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vlo);
  double lo = lanes[0];
  for (int k = 1; k < 4; ++k)
    if (lanes[k] < lo) lo = lanes[k];
  _mm256_store_pd(lanes, vhi);
  double hi = lanes[0];
  for (int k = 1; k < 4; ++k)
    if (lanes[k] > hi) hi = lanes[k];
  for (; i < n; ++i) {
    if (x[i] < lo) lo = x[i];
    if (x[i] > hi) hi = x[i];
  }
  *mn = lo;
  *mx = hi;
}

void vlog_avx2(const double* x, double* out, std::size_t n) {
  const __m256d tiny = _mm256_set1_pd(DBL_MIN);
  const __m256d huge = _mm256_set1_pd(DBL_MAX);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    __m256d ok = _mm256_and_pd(_mm256_cmp_pd(v, tiny, _CMP_GE_OQ),
                               _mm256_cmp_pd(v, huge, _CMP_LE_OQ));
    if (_mm256_movemask_pd(ok) == 0xF) {
      _mm256_storeu_pd(out + i, log4(v));
    } else {
      for (int k = 0; k < 4; ++k) out[i + k] = std::log(x[i + k]);
    }
  }
  for (; i < n; ++i) out[i] = std::log(x[i]);
}

void vexp_avx2(const double* x, double* out, std::size_t n) {
  const __m256d bound = _mm256_set1_pd(708.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_loadu_pd(x + i);
    __m256d mag = _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
    __m256d ok = _mm256_cmp_pd(mag, bound, _CMP_LT_OQ);
    if (_mm256_movemask_pd(ok) == 0xF) {
      _mm256_storeu_pd(out + i, exp4(v));
    } else {
      for (int k = 0; k < 4; ++k) out[i + k] = std::exp(x[i + k]);
    }
  }
  for (; i < n; ++i) out[i] = std::exp(x[i]);
}

void vmul_avx2(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void vsub_avx2(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) out[i] = a[i] - b[i];
}

void vscale_avx2(double s, const double* x, double* out, std::size_t n) {
  __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, _mm256_mul_pd(vs, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = s * x[i];
}

// mul+add (not fmadd): keeps results bit-identical to the scalar reference
void vaxpy_avx2(double s, const double* x, double* y, std::size_t n) {
  __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d prod = _mm256_mul_pd(vs, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] = y[i] + s * x[i];
}

void vmadd_avx2(const double* x, double s, const double* y, double* out, std::size_t n) {
  __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d prod = _mm256_mul_pd(vs, _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(x + i), prod));
  }
  for (; i < n; ++i) out[i] = x[i] + s * y[i];
}

void matvec_avx2(const double* a, std::size_t rows, std::size_t cols, const double* x,
                 double* y) {
  for (std::size_t i = 0; i < rows; ++i) y[i] = dot_avx2(a + i * cols, x, cols);
}

}  // namespace

const KernelTable avx2_table = {
    sum_avx2, dot_avx2, minmax_avx2, vlog_avx2,  vexp_avx2,  vmul_avx2,
    vsub_avx2, vscale_avx2, vaxpy_avx2, vmadd_avx2, matvec_avx2,
};

}  // namespace gmcons::kernels::detail
