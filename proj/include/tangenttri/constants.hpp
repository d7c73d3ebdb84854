#pragma once

#include <numbers>

namespace tangenttri {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2;
inline constexpr double kTwoPi = 2 * std::numbers::pi;

}  // namespace tangenttri
