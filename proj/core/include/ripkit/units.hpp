#pragma once

#include <numbers>

namespace ripkit {

// Frequencies are cyclic MHz, times are ns.
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kRadPerNsPerMHz = kTwoPi * 1e-3;

constexpr double rad_per_ns(double f_mhz) { return kRadPerNsPerMHz * f_mhz; }
constexpr double phase(double f_mhz, double t_ns) { return kRadPerNsPerMHz * f_mhz * t_ns; }

}  // namespace ripkit
