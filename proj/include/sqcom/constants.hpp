#pragma once

#include <numbers>

namespace sqcom {

// CODATA 2018. k_B is exact in the SI; hbar = h / 2pi with h exact.
inline constexpr double kHbar = 1.054571817e-34;     // J s
inline constexpr double kBoltzmann = 1.380649e-23;   // J / K

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace sqcom
