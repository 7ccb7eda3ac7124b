#pragma once

#include <numbers>

namespace epgw {

/// CODATA 2018 exact/recommended values, SI units.
struct PhysicalConstants {
    static constexpr double hbar = 1.054571817e-34;  // J s
    static constexpr double c = 299792458.0;         // m / s
    static constexpr double k_B = 1.380649e-23;      // J / K
};

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Everything inside the library is angular (rad/s). Hz only appears at the
// config/CSV boundary.
constexpr double to_angular(double hertz) noexcept { return kTwoPi * hertz; }
constexpr double to_hertz(double angular) noexcept { return angular / kTwoPi; }

}  // namespace epgw
