// AVX2+FMA variants of the hot kernels. This translation unit is compiled
// with -mavx2 -mfma and is only ever entered after a runtime CPU check.

#include "kernels_internal.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>
#include <cstdint>

namespace baskex::kernels::avx2 {

namespace {

// exp() on 4 doubles, Cephes-style rational approximation (~1 ulp).
// Inputs clamped to [-708, 708]; values below the clamp flush to 0.
inline __m256d vexp(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d ln2_hi = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);
  const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
  const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
  const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
  const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
  const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
  const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
  const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);
  const __m256d hi = _mm256_set1_pd(708.0);
  const __m256d lo = _mm256_set1_pd(-708.0);

  const __m256d xc = _mm256_min_pd(_mm256_max_pd(x, lo), hi);
  const __m256d nf = _mm256_round_pd(
      _mm256_mul_pd(xc, log2e), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(nf, ln2_hi, xc);
  r = _mm256_fnmadd_pd(nf, ln2_lo, r);
  const __m256d r2 = _mm256_mul_pd(r, r);
  __m256d px = _mm256_fmadd_pd(p0, r2, p1);
  px = _mm256_fmadd_pd(px, r2, p2);
  px = _mm256_mul_pd(px, r);
  __m256d qx = _mm256_fmadd_pd(q0, r2, q1);
  qx = _mm256_fmadd_pd(qx, r2, q2);
  qx = _mm256_fmadd_pd(qx, r2, q3);
  __m256d e = _mm256_div_pd(px, _mm256_sub_pd(qx, px));
  e = _mm256_fmadd_pd(_mm256_set1_pd(2.0), e, _mm256_set1_pd(1.0));
  // scale by 2^n through the exponent bits; |n| <= 1022 after clamping
  const __m128i n32 = _mm256_cvtpd_epi32(nf);
  const __m256i n64 = _mm256_cvtepi32_epi64(n32);
  const __m256i bits =
      _mm256_add_epi64(_mm256_castpd_si256(e), _mm256_slli_epi64(n64, 52));
  __m256d result = _mm256_castsi256_pd(bits);
  const __m256d flush = _mm256_cmp_pd(x, lo, _CMP_LT_OQ);
  return _mm256_andnot_pd(flush, result);
}

inline double reduce_add(__m256d v) {
  const __m128d lo128 =
      _mm_add_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
  return _mm_cvtsd_f64(_mm_add_sd(lo128, _mm_unpackhi_pd(lo128, lo128)));
}

}  // namespace

double gauss_pair_sum(const PairSumArgs& a, bool cubic) {
  const __m256d e1s = _mm256_set1_pd(a.e1_scale);
  const __m256d e2s = _mm256_set1_pd(a.e2_scale);
  const __m256d xs = _mm256_set1_pd(a.x_scale);
  const __m256d eb = _mm256_set1_pd(a.e_base);
  const __m256d xb = _mm256_set1_pd(a.x_base - a.d_shift);
  const __m256d ds = _mm256_set1_pd(a.d_scale);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

  __m256d vsum = _mm256_setzero_pd();
  __m256d vcomp = _mm256_setzero_pd();
  std::size_t l = 0;
  for (; l + 4 <= a.count; l += 4) {
    __m256d e = eb;
    if (a.e1) e = _mm256_fmadd_pd(_mm256_loadu_pd(a.e1 + l), e1s, e);
    if (a.e2) e = _mm256_fmadd_pd(_mm256_loadu_pd(a.e2 + l), e2s, e);
    const __m256d d = _mm256_mul_pd(
        _mm256_fmadd_pd(_mm256_loadu_pd(a.x + l), xs, xb), ds);
    const __m256d arg = _mm256_fnmadd_pd(_mm256_mul_pd(d, d), half, e);
    __m256d term = _mm256_mul_pd(_mm256_loadu_pd(a.weight + l), vexp(arg));
    if (cubic) term = _mm256_mul_pd(term, _mm256_fmsub_pd(d, ds, one));
    // Neumaier accumulation per lane
    const __m256d s = _mm256_add_pd(vsum, term);
    const __m256d big_first =
        _mm256_add_pd(_mm256_sub_pd(vsum, s), term);  // |vsum| >= |term|
    const __m256d small_first = _mm256_add_pd(_mm256_sub_pd(term, s), vsum);
    const __m256d pick = _mm256_cmp_pd(_mm256_and_pd(vsum, abs_mask),
                                       _mm256_and_pd(term, abs_mask),
                                       _CMP_GE_OQ);
    vcomp = _mm256_add_pd(vcomp,
                          _mm256_blendv_pd(small_first, big_first, pick));
    vsum = s;
  }
  double sum = reduce_add(vsum) + reduce_add(vcomp);
  // scalar tail
  for (; l < a.count; ++l) {
    double e = a.e_base;
    if (a.e1) e += a.e1_scale * a.e1[l];
    if (a.e2) e += a.e2_scale * a.e2[l];
    const double d = (a.x_base + a.x_scale * a.x[l] - a.d_shift) * a.d_scale;
    double term = a.weight[l] * std::exp(e - 0.5 * d * d);
    if (cubic) term *= d * a.d_scale - 1.0;
    sum += term;
  }
  return sum;
}

void mc_basket_tile(const double* factor, std::size_t n, std::size_t rank,
                    std::size_t ld, const double* z, std::size_t lanes,
                    const double* drift, const double* wf, double* out_pos,
                    double* out_neg) {
  if (lanes != 4) {
    // non-tile remainders take the reference path
    scalar::mc_basket_tile(factor, n, rank, ld, z, lanes, drift, wf, out_pos,
                           out_neg);
    return;
  }
  __m256d accp = _mm256_setzero_pd();
  __m256d accn = _mm256_setzero_pd();
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = factor + i * ld;
    __m256d y = _mm256_setzero_pd();
    for (std::size_t k = 0; k < rank; ++k)
      y = _mm256_fmadd_pd(_mm256_set1_pd(row[k]), _mm256_loadu_pd(z + 4 * k),
                          y);
    const __m256d di = _mm256_set1_pd(drift[i]);
    const __m256d wfi = _mm256_set1_pd(wf[i]);
    accp = _mm256_fmadd_pd(wfi, vexp(_mm256_add_pd(di, y)), accp);
    if (out_neg) accn = _mm256_fmadd_pd(wfi, vexp(_mm256_sub_pd(di, y)), accn);
  }
  _mm256_storeu_pd(out_pos, accp);
  if (out_neg) _mm256_storeu_pd(out_neg, accn);
}

}  // namespace baskex::kernels::avx2

#endif  // __AVX2__ && __FMA__
