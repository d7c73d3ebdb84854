#include <algorithm>
#include <limits>

#include "kernels/scalar_math.hpp"
#include "kernels/tables.hpp"

namespace tangenttri::kernels {
namespace {

void contacts(rng::PhiloxKey key, std::uint32_t stream, std::uint64_t first, std::size_t n, double* alpha,
              double* beta) {
  for (std::size_t i = 0; i < n; ++i) {
    scalar::contacts_from_block(rng::philox4x32(rng::counter_for(first + i, stream), key), alpha[i], beta[i]);
  }
}

void angle_pairs(rng::PhiloxKey key, std::uint32_t stream, std::uint64_t first, std::size_t n, double* theta1,
                 double* theta2) {
  for (std::size_t i = 0; i < n; ++i) {
    scalar::angles_from_block(rng::philox4x32(rng::counter_for(first + i, stream), key), theta1[i], theta2[i]);
  }
}

void tan_half(const double* x, std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = scalar::tan_half(x[i]);
}

void cot_half(const double* x, std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = scalar::cot_half(x[i]);
}

void side_from_contacts(const double* alpha, const double* beta, std::size_t n, double* side) {
  for (std::size_t i = 0; i < n; ++i) side[i] = scalar::side(alpha[i], beta[i]);
}

void sides_from_contacts(const double* alpha, const double* beta, std::size_t n, double* s1, double* s2,
                         double* s3) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ca = scalar::cot_half(alpha[i]);
    const double cb = scalar::cot_half(beta[i]);
    const double tg = scalar::tan_half(alpha[i] + beta[i]);
    s1[i] = ca + cb;
    s2[i] = ca + tg;
    s3[i] = cb + tg;
  }
}

void perimeter_from_contacts(const double* alpha, const double* beta, std::size_t n, double* perimeter) {
  for (std::size_t i = 0; i < n; ++i) perimeter[i] = scalar::perimeter(alpha[i], beta[i]);
}

std::size_t count_acute(const double* alpha, const double* beta, std::size_t n) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) count += scalar::acute(alpha[i], beta[i]) ? 1 : 0;
  return count;
}

double lane_sum(const double* x, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) acc[i & 3] += x[i];
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

MinMax min_max(const double* x, std::size_t n) {
  MinMax m{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < n; ++i) {
    m.min = std::min(m.min, x[i]);
    m.max = std::max(m.max, x[i]);
  }
  return m;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::Scalar,         "scalar",           contacts,
                                 angle_pairs,         tan_half,           cot_half,
                                 side_from_contacts,  sides_from_contacts, perimeter_from_contacts,
                                 count_acute,         lane_sum,           min_max};
  return table;
}

}  // namespace tangenttri::kernels
