// AVX2 variants. Compiled with -mavx2 and without FMA; each routine mirrors
// its scalar counterpart in scalar_math.hpp operation for operation and
// finishes ragged tails with the scalar code.

#include <immintrin.h>

#include <algorithm>
#include <limits>

#include "kernels/scalar_math.hpp"
#include "kernels/tables.hpp"

namespace tangenttri::kernels {
namespace {

constexpr std::size_t kLanes = 4;

inline __m256d splat(double v) { return _mm256_set1_pd(v); }

// tan_core on four lanes; returns r and the reflection mask.
inline __m256d tan_core(__m256d y, __m256d& reflected) {
  using namespace scalar;
  reflected = _mm256_cmp_pd(_mm256_mul_pd(y, splat(kFourOverPi)), splat(1.0), _CMP_GE_OQ);
  __m256d reduced = _mm256_sub_pd(y, splat(kHalfPiPart1));
  reduced = _mm256_sub_pd(reduced, splat(kHalfPiPart2));
  reduced = _mm256_sub_pd(reduced, splat(kHalfPiPart3));
  const __m256d z = _mm256_blendv_pd(y, reduced, reflected);
  const __m256d zz = _mm256_mul_pd(z, z);
  __m256d num = _mm256_add_pd(_mm256_mul_pd(splat(kTanP0), zz), splat(kTanP1));
  num = _mm256_add_pd(_mm256_mul_pd(num, zz), splat(kTanP2));
  __m256d den = _mm256_add_pd(zz, splat(kTanQ0));
  den = _mm256_add_pd(_mm256_mul_pd(den, zz), splat(kTanQ1));
  den = _mm256_add_pd(_mm256_mul_pd(den, zz), splat(kTanQ2));
  den = _mm256_add_pd(_mm256_mul_pd(den, zz), splat(kTanQ3));
  const __m256d ratio = _mm256_div_pd(_mm256_mul_pd(zz, num), den);
  return _mm256_add_pd(z, _mm256_mul_pd(z, ratio));
}

inline __m256d tan_half(__m256d x) {
  __m256d reflected;
  const __m256d r = tan_core(_mm256_mul_pd(x, splat(0.5)), reflected);
  const __m256d inverted = _mm256_div_pd(splat(-1.0), r);
  return _mm256_blendv_pd(r, inverted, reflected);
}

inline __m256d cot_half(__m256d x) {
  __m256d reflected;
  const __m256d r = tan_core(_mm256_mul_pd(x, splat(0.5)), reflected);
  const __m256d negated = _mm256_xor_pd(r, splat(-0.0));
  const __m256d inverted = _mm256_div_pd(splat(1.0), r);
  return _mm256_blendv_pd(inverted, negated, reflected);
}

// Four Philox4x32-10 blocks, one per 64-bit lane; each lane holds a 32-bit
// word in its low half.
struct PhiloxLanes {
  __m256i w0, w1, w2, w3;
};

inline PhiloxLanes philox4(rng::PhiloxKey key, std::uint32_t stream, std::uint64_t first) {
  const __m256i low32 = _mm256_set1_epi64x(0xFFFFFFFFll);
  const __m256i index = _mm256_add_epi64(_mm256_set1_epi64x(static_cast<long long>(first)),
                                         _mm256_set_epi64x(3, 2, 1, 0));
  __m256i c0 = _mm256_and_si256(index, low32);
  __m256i c1 = _mm256_srli_epi64(index, 32);
  __m256i c2 = _mm256_set1_epi64x(stream);
  __m256i c3 = _mm256_setzero_si256();
  const __m256i m0 = _mm256_set1_epi64x(rng::kPhiloxM0);
  const __m256i m1 = _mm256_set1_epi64x(rng::kPhiloxM1);
  for (int round = 0; round < rng::kPhiloxRounds; ++round) {
    const __m256i k0 = _mm256_set1_epi64x(key.k0);
    const __m256i k1 = _mm256_set1_epi64x(key.k1);
    const __m256i p0 = _mm256_mul_epu32(c0, m0);
    const __m256i p1 = _mm256_mul_epu32(c2, m1);
    const __m256i n0 = _mm256_xor_si256(_mm256_xor_si256(_mm256_srli_epi64(p1, 32), c1), k0);
    const __m256i n1 = _mm256_and_si256(p1, low32);
    const __m256i n2 = _mm256_xor_si256(_mm256_xor_si256(_mm256_srli_epi64(p0, 32), c3), k1);
    const __m256i n3 = _mm256_and_si256(p0, low32);
    c0 = n0;
    c1 = n1;
    c2 = n2;
    c3 = n3;
    key.k0 += rng::kPhiloxW0;
    key.k1 += rng::kPhiloxW1;
  }
  return {c0, c1, c2, c3};
}

// Exact conversion of integers below 2^52 through the 2^52 exponent trick.
inline __m256d top49(__m256i lo, __m256i hi) {
  const __m256i word = _mm256_or_si256(lo, _mm256_slli_epi64(hi, 32));
  const __m256i bits = _mm256_or_si256(_mm256_srli_epi64(word, 15), _mm256_set1_epi64x(0x4330000000000000ll));
  return _mm256_sub_pd(_mm256_castsi256_pd(bits), splat(0x1p52));
}

void contacts(rng::PhiloxKey key, std::uint32_t stream, std::uint64_t first, std::size_t n, double* alpha,
              double* beta) {
  using namespace scalar;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const PhiloxLanes w = philox4(key, stream, first + i);
    const __m256d a = top49(w.w0, w.w1);
    const __m256d b = top49(w.w2, w.w3);
    __m256d u = _mm256_mul_pd(_mm256_add_pd(a, splat(0.25)), splat(kUniformScale));
    __m256d v = _mm256_mul_pd(_mm256_add_pd(b, splat(0.5)), splat(kUniformScale));
    const __m256d reflect = _mm256_cmp_pd(_mm256_add_pd(a, b), splat(kUniformSpan), _CMP_GE_OQ);
    u = _mm256_blendv_pd(u, _mm256_sub_pd(splat(1.0), u), reflect);
    v = _mm256_blendv_pd(v, _mm256_sub_pd(splat(1.0), v), reflect);
    _mm256_storeu_pd(alpha + i, _mm256_mul_pd(splat(kPi), u));
    _mm256_storeu_pd(beta + i, _mm256_mul_pd(splat(kPi), v));
  }
  for (; i < n; ++i) {
    scalar::contacts_from_block(rng::philox4x32(rng::counter_for(first + i, stream), key), alpha[i], beta[i]);
  }
}

void angle_pairs(rng::PhiloxKey key, std::uint32_t stream, std::uint64_t first, std::size_t n, double* theta1,
                 double* theta2) {
  using namespace scalar;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const PhiloxLanes w = philox4(key, stream, first + i);
    const __m256d a = top49(w.w0, w.w1);
    const __m256d b = top49(w.w2, w.w3);
    const __m256d u = _mm256_mul_pd(_mm256_add_pd(a, splat(0.5)), splat(kUniformScale));
    const __m256d v = _mm256_mul_pd(_mm256_add_pd(b, splat(0.5)), splat(kUniformScale));
    _mm256_storeu_pd(theta1 + i, _mm256_mul_pd(splat(kPi), u));
    _mm256_storeu_pd(theta2 + i, _mm256_mul_pd(splat(kPi), v));
  }
  for (; i < n; ++i) {
    scalar::angles_from_block(rng::philox4x32(rng::counter_for(first + i, stream), key), theta1[i], theta2[i]);
  }
}

void tan_half_kernel(const double* x, std::size_t n, double* out) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) _mm256_storeu_pd(out + i, tan_half(_mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = scalar::tan_half(x[i]);
}

void cot_half_kernel(const double* x, std::size_t n, double* out) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) _mm256_storeu_pd(out + i, cot_half(_mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = scalar::cot_half(x[i]);
}

void side_from_contacts(const double* alpha, const double* beta, std::size_t n, double* side) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d ca = cot_half(_mm256_loadu_pd(alpha + i));
    const __m256d cb = cot_half(_mm256_loadu_pd(beta + i));
    _mm256_storeu_pd(side + i, _mm256_add_pd(ca, cb));
  }
  for (; i < n; ++i) side[i] = scalar::side(alpha[i], beta[i]);
}

void sides_from_contacts(const double* alpha, const double* beta, std::size_t n, double* s1, double* s2,
                         double* s3) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d a = _mm256_loadu_pd(alpha + i);
    const __m256d b = _mm256_loadu_pd(beta + i);
    const __m256d ca = cot_half(a);
    const __m256d cb = cot_half(b);
    const __m256d tg = tan_half(_mm256_add_pd(a, b));
    _mm256_storeu_pd(s1 + i, _mm256_add_pd(ca, cb));
    _mm256_storeu_pd(s2 + i, _mm256_add_pd(ca, tg));
    _mm256_storeu_pd(s3 + i, _mm256_add_pd(cb, tg));
  }
  for (; i < n; ++i) {
    const double ca = scalar::cot_half(alpha[i]);
    const double cb = scalar::cot_half(beta[i]);
    const double tg = scalar::tan_half(alpha[i] + beta[i]);
    s1[i] = ca + cb;
    s2[i] = ca + tg;
    s3[i] = cb + tg;
  }
}

void perimeter_from_contacts(const double* alpha, const double* beta, std::size_t n, double* perimeter) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d a = _mm256_loadu_pd(alpha + i);
    const __m256d b = _mm256_loadu_pd(beta + i);
    const __m256d sum = _mm256_add_pd(_mm256_add_pd(cot_half(a), cot_half(b)), tan_half(_mm256_add_pd(a, b)));
    _mm256_storeu_pd(perimeter + i, _mm256_mul_pd(splat(2.0), sum));
  }
  for (; i < n; ++i) perimeter[i] = scalar::perimeter(alpha[i], beta[i]);
}

std::size_t count_acute(const double* alpha, const double* beta, std::size_t n) {
  std::size_t count = 0;
  std::size_t i = 0;
  const __m256d pi = splat(kPi);
  const __m256d half_pi = splat(kHalfPi);
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d a = _mm256_loadu_pd(alpha + i);
    const __m256d b = _mm256_loadu_pd(beta + i);
    const __m256d g1 = _mm256_cmp_pd(_mm256_sub_pd(pi, a), half_pi, _CMP_GT_OQ);
    const __m256d g2 = _mm256_cmp_pd(_mm256_sub_pd(pi, b), half_pi, _CMP_GT_OQ);
    const __m256d g3 = _mm256_cmp_pd(_mm256_add_pd(a, b), half_pi, _CMP_GT_OQ);
    const int mask = _mm256_movemask_pd(_mm256_and_pd(_mm256_and_pd(g1, g2), g3));
    count += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(mask)));
  }
  for (; i < n; ++i) count += scalar::acute(alpha[i], beta[i]) ? 1 : 0;
  return count;
}

double lane_sum(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, acc);
  for (; i < n; ++i) lanes[i & 3] += x[i];
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

MinMax min_max(const double* x, std::size_t n) {
  __m256d lo = splat(std::numeric_limits<double>::infinity());
  __m256d hi = splat(-std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d v = _mm256_loadu_pd(x + i);
    lo = _mm256_min_pd(lo, v);
    hi = _mm256_max_pd(hi, v);
  }
  alignas(32) double los[kLanes];
  alignas(32) double his[kLanes];
  _mm256_store_pd(los, lo);
  _mm256_store_pd(his, hi);
  MinMax m{std::min({los[0], los[1], los[2], los[3]}), std::max({his[0], his[1], his[2], his[3]})};
  for (; i < n; ++i) {
    m.min = std::min(m.min, x[i]);
    m.max = std::max(m.max, x[i]);
  }
  return m;
}

}  // namespace

namespace detail {

const KernelTable& avx2_table_unchecked() {
  static const KernelTable table{Isa::Avx2,          "avx2",          contacts,
                                 angle_pairs,        tan_half_kernel, cot_half_kernel,
                                 side_from_contacts, sides_from_contacts, perimeter_from_contacts,
                                 count_acute,        lane_sum,        min_max};
  return table;
}

}  // namespace detail
}  // namespace tangenttri::kernels
