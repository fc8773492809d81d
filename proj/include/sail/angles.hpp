#pragma once

#include <cmath>
#include <numbers>

namespace sail {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr double kHalfPi = 0.5 * kPi;
inline constexpr double kQuarterPi = 0.25 * kPi;

// Canonical angular window [-pi/4, 7pi/4). All 2pi-periodic piecewise
// definitions (drifts, regions, tack rules) are stated on this window.
inline constexpr double kWindowLo = -kQuarterPi;
inline constexpr double kWindowHi = 7.0 * kQuarterPi;

// Reduce an unwrapped angle into [-pi/4, 7pi/4).
inline double wrap_angle(double theta) {
  double w = std::fmod(theta + kQuarterPi, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  w -= kQuarterPi;
  // fmod can land exactly on the open endpoint after rounding.
  if (w >= kWindowHi) w -= kTwoPi;
  if (w < kWindowLo) w += kTwoPi;
  return w;
}

}  // namespace sail
