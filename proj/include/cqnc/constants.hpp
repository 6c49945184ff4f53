#pragma once

#include <numbers>

namespace cqnc {

// CODATA 2018 exact values
inline constexpr double kPlanckH = 6.62607015e-34;    // J s
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kHbar = kPlanckH / kTwoPi;    // J s
inline constexpr double kBoltzmann = 1.380649e-23;    // J / K

}  // namespace cqnc
