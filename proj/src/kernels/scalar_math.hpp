#pragma once

// Element-wise routines shared by the scalar kernels, the AVX2 tails and the
// single-draw samplers. The AVX2 kernels mirror these operation for
// operation.

#include <cstdint>

#include "tangenttri/constants.hpp"
#include "tangenttri/rng.hpp"

namespace tangenttri::kernels::scalar {

// Rational approximation of tan on [-pi/4, pi/4] (Cephes tan.c) and the
// three-part split of pi/4 used for argument reduction.
inline constexpr double kTanP0 = -1.30936939181383777646e4;
inline constexpr double kTanP1 = 1.15351664838587416140e6;
inline constexpr double kTanP2 = -1.79565251976484877988e7;
inline constexpr double kTanQ0 = 1.36812963470692954678e4;
inline constexpr double kTanQ1 = -1.32089234440210967447e6;
inline constexpr double kTanQ2 = 2.50083801823357915839e7;
inline constexpr double kTanQ3 = -5.38695755929454629881e7;
inline constexpr double kHalfPiPart1 = 2 * 7.853981554508209228515625e-1;
inline constexpr double kHalfPiPart2 = 2 * 7.94662735614792836714e-9;
inline constexpr double kHalfPiPart3 = 2 * 3.06161699786838294307e-17;
inline constexpr double kFourOverPi = 1.27323954473516268615;

inline constexpr double kUniformScale = 0x1p-49;
inline constexpr double kUniformSpan = 0x1p49;

struct TanCore {
  double r;        // tan(z) for the reduced argument z
  bool reflected;  // z = y - pi/2, so tan(y) = -1 / r
};

// y in [0, pi/2]
inline TanCore tan_core(double y) {
  const bool reflected = y * kFourOverPi >= 1.0;
  double z = y;
  if (reflected) z = ((y - kHalfPiPart1) - kHalfPiPart2) - kHalfPiPart3;
  const double zz = z * z;
  const double num = (kTanP0 * zz + kTanP1) * zz + kTanP2;
  const double den = (((zz + kTanQ0) * zz + kTanQ1) * zz + kTanQ2) * zz + kTanQ3;
  const double r = z + z * ((zz * num) / den);
  return {r, reflected};
}

// x in (0, pi)
inline double tan_half(double x) {
  const TanCore t = tan_core(x * 0.5);
  return t.reflected ? -1.0 / t.r : t.r;
}

inline double cot_half(double x) {
  const TanCore t = tan_core(x * 0.5);
  return t.reflected ? -t.r : 1.0 / t.r;
}

// Top 49 bits of a 64-bit word assembled from two Philox output words.
inline double top49(std::uint32_t lo, std::uint32_t hi) {
  const std::uint64_t word = (static_cast<std::uint64_t>(hi) << 32) | lo;
  return static_cast<double>(word >> 15);
}

// Offsets 1/4 and 1/2 keep u + v off 1 exactly; reflection through the
// anti-diagonal then gives u + v <= 1 - 2^-51.
inline void contacts_from_block(const rng::Block& r, double& alpha, double& beta) {
  const double a = top49(r[0], r[1]);
  const double b = top49(r[2], r[3]);
  double u = (a + 0.25) * kUniformScale;
  double v = (b + 0.5) * kUniformScale;
  if (a + b >= kUniformSpan) {
    u = 1.0 - u;
    v = 1.0 - v;
  }
  alpha = kPi * u;
  beta = kPi * v;
}

inline void angles_from_block(const rng::Block& r, double& theta1, double& theta2) {
  theta1 = kPi * ((top49(r[0], r[1]) + 0.5) * kUniformScale);
  theta2 = kPi * ((top49(r[2], r[3]) + 0.5) * kUniformScale);
}

inline double side(double alpha, double beta) { return cot_half(alpha) + cot_half(beta); }

inline double perimeter(double alpha, double beta) {
  return 2.0 * ((cot_half(alpha) + cot_half(beta)) + tan_half(alpha + beta));
}

inline bool acute(double alpha, double beta) {
  return (kPi - alpha) > kHalfPi && (kPi - beta) > kHalfPi && (alpha + beta) > kHalfPi;
}

}  // namespace tangenttri::kernels::scalar
