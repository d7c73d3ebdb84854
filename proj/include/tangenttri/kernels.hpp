#pragma once

// Data-parallel inner loops of the Monte Carlo estimators.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. Both perform the same IEEE operations in the same order (no FMA
// contraction, fixed four-lane summation order), so their outputs are
// bit-identical and simulation results do not depend on the CPU that ran
// them. The variant is chosen at runtime from CPU support; the environment
// variable TANGENTTRI_SIMD=scalar|avx2 overrides the choice.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "tangenttri/rng.hpp"

namespace tangenttri::kernels {

enum class Isa { Scalar, Avx2 };

struct MinMax {
  double min;
  double max;
};

struct KernelTable {
  Isa isa;
  const char* name;

  /// (alpha, beta) uniform on {alpha, beta > 0, alpha + beta < pi} for
  /// sample indices first .. first + n - 1.
  void (*contacts)(rng::PhiloxKey key, std::uint32_t stream, std::uint64_t first, std::size_t n, double* alpha,
                   double* beta);
  /// Two independent angles uniform on (0, pi) per sample index.
  void (*angle_pairs)(rng::PhiloxKey key, std::uint32_t stream, std::uint64_t first, std::size_t n, double* theta1,
                      double* theta2);

  void (*tan_half)(const double* x, std::size_t n, double* out);
  void (*cot_half)(const double* x, std::size_t n, double* out);

  /// cot(alpha/2) + cot(beta/2): the side on the first tangent.
  void (*side_from_contacts)(const double* alpha, const double* beta, std::size_t n, double* side);
  void (*sides_from_contacts)(const double* alpha, const double* beta, std::size_t n, double* s1, double* s2,
                              double* s3);
  void (*perimeter_from_contacts)(const double* alpha, const double* beta, std::size_t n, double* perimeter);
  std::size_t (*count_acute)(const double* alpha, const double* beta, std::size_t n);

  /// Sum with element i added to accumulator i % 4, combined as
  /// (acc0 + acc1) + (acc2 + acc3).
  double (*lane_sum)(const double* x, std::size_t n);
  MinMax (*min_max)(const double* x, std::size_t n);
};

const KernelTable& scalar_table();

/// nullptr when the AVX2 variant was not built or the CPU lacks AVX2.
const KernelTable* avx2_table();

std::vector<Isa> available_isas();
const KernelTable& table_for(Isa isa);  // throws DomainError when unavailable

/// Table used by the estimators.
const KernelTable& active();
void select(Isa isa);

std::string_view isa_name(Isa isa);

}  // namespace tangenttri::kernels
