#pragma once

#include <numbers>

namespace rotomag::constants {

inline constexpr double c0 = 299792458.0;          // speed of light, m/s
inline constexpr double hbar = 1.054571817e-34;    // reduced Planck constant, J s
inline constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace rotomag::constants
