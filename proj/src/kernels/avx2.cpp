// AVX2 variants. Compiled with the default target; each function opts into
// AVX2 through the target attribute so no AVX2 code leaks into inline
// functions shared with other translation units.

#include "gossipjam/kernels.hpp"

#if defined(GOSSIPJAM_HAVE_AVX2_KERNELS)

#include <immintrin.h>

#include <bit>
#include <limits>

#define GOSSIPJAM_AVX2 __attribute__((target("avx2")))

namespace gossipjam::kernels::avx2 {

namespace {

GOSSIPJAM_AVX2 inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

}  // namespace

GOSSIPJAM_AVX2 void interval_row(const IntervalRow& row, std::span<const double> prev,
                                 std::span<double> out) {
  const std::size_t count = row.size - row.length + 1;
  const std::size_t k = row.length;
  const double* left_p = row.in_left.data();
  const double* right_p = row.in_right.data() + (k - 1);
  const double* hi_p = row.src_prefix.data() + k;
  const double* lo_p = row.src_prefix.data();
  const double* prev_p = prev.data();
  double* out_p = out.data() + 1;

  const __m256d lambda_s = _mm256_set1_pd(row.lambda_s);
  std::size_t p = 0;
  for (; p + 4 <= count; p += 4) {
    const __m256d left = _mm256_loadu_pd(left_p + p);
    const __m256d right = _mm256_loadu_pd(right_p + p);
    const __m256d a = _mm256_loadu_pd(prev_p + p);
    const __m256d b = _mm256_loadu_pd(prev_p + p + 1);
    const __m256d num =
        _mm256_add_pd(_mm256_add_pd(lambda_s, _mm256_mul_pd(left, a)), _mm256_mul_pd(right, b));
    const __m256d src = _mm256_sub_pd(_mm256_loadu_pd(hi_p + p), _mm256_loadu_pd(lo_p + p));
    const __m256d den = _mm256_add_pd(_mm256_add_pd(src, left), right);
    _mm256_storeu_pd(out_p + p, _mm256_div_pd(num, den));
  }
  for (; p < count; ++p) {
    const double left = left_p[p];
    const double right = right_p[p];
    const double num = row.lambda_s + left * prev_p[p] + right * prev_p[p + 1];
    const double den = (hi_p[p] - lo_p[p]) + left + right;
    out_p[p] = num / den;
  }
  out[0] = 0.0;
  out[count + 1] = 0.0;
}

GOSSIPJAM_AVX2 void ring_age_table(std::span<const double> sizes, std::size_t max_ring,
                                   std::span<double> table) {
  const std::size_t batch = sizes.size();
  double* t = table.data();
  std::size_t b = 0;
  for (; b + 4 <= batch; b += 4) {
    const __m256d n = _mm256_loadu_pd(sizes.data() + b);
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d product = one;
    __m256d sum = _mm256_setzero_pd();
    _mm256_storeu_pd(t + b, n);
    for (std::size_t j = 1; j < max_ring; ++j) {
      const __m256d jd = _mm256_set1_pd(static_cast<double>(j));
      product = _mm256_div_pd(product, _mm256_add_pd(_mm256_div_pd(jd, n), one));
      sum = _mm256_add_pd(sum, product);
      const __m256d weight = _mm256_div_pd(n, _mm256_add_pd(jd, one));
      _mm256_storeu_pd(t + j * batch + b, _mm256_add_pd(sum, _mm256_mul_pd(weight, product)));
    }
  }
  for (; b < batch; ++b) {
    const double n = sizes[b];
    double product = 1.0;
    double sum = 0.0;
    t[b] = n;
    for (std::size_t j = 1; j < max_ring; ++j) {
      const double jd = static_cast<double>(j);
      product = product / (jd / n + 1.0);
      sum = sum + product;
      t[j * batch + b] = sum + (n / (jd + 1.0)) * product;
    }
  }
}

GOSSIPJAM_AVX2 double subset_step(const SubsetSystem& sys, std::uint32_t mask,
                                  std::span<const double> ages) {
  double source = 0.0;
  for (std::uint32_t bits = mask; bits != 0; bits &= bits - 1)
    source += sys.source[static_cast<std::size_t>(std::countr_zero(bits))];

  const double* rates = sys.in_rate.data();
  const double* table = ages.data();
  const __m256i set_bits = _mm256_set1_epi64x(static_cast<long long>(mask));
  const __m256i ones = _mm256_set1_epi64x(1);
  const __m256d zero = _mm256_setzero_pd();
  __m256d num_acc = zero;
  __m256d den_acc = zero;

  for (std::size_t c = 0; c < sys.stride; c += 4) {
    __m256d into = zero;
    for (std::uint32_t bits = mask; bits != 0; bits &= bits - 1) {
      const auto j = static_cast<std::size_t>(std::countr_zero(bits));
      into = _mm256_add_pd(into, _mm256_loadu_pd(rates + j * sys.stride + c));
    }
    const auto base = static_cast<long long>(c);
    const __m256i lane = _mm256_set_epi64x(base + 3, base + 2, base + 1, base);
    const __m256i bit = _mm256_sllv_epi64(ones, lane);
    const __m256i in_set = _mm256_cmpeq_epi64(_mm256_and_si256(bit, set_bits), bit);
    const __m256d positive = _mm256_cmp_pd(into, zero, _CMP_GT_OQ);
    const __m256d active = _mm256_andnot_pd(_mm256_castsi256_pd(in_set), positive);
    if (_mm256_movemask_pd(active) == 0) continue;
    const __m256i index = _mm256_or_si256(set_bits, bit);
    const __m256d superset = _mm256_mask_i64gather_pd(zero, table, index, active, 8);
    const __m256d weight = _mm256_and_pd(into, active);
    num_acc = _mm256_add_pd(num_acc, _mm256_mul_pd(weight, superset));
    den_acc = _mm256_add_pd(den_acc, weight);
  }
  const double den = source + horizontal_sum(den_acc);
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return (sys.lambda_s + horizontal_sum(num_acc)) / den;
}

}  // namespace gossipjam::kernels::avx2

#endif
