#pragma once

#include <numbers>

namespace attofocus::constants {

// CODATA 2018, SI.
inline constexpr double speed_of_light = 299792458.0;         // m/s
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double reduced_planck = 1.054571817e-34;      // J s

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace attofocus::constants
