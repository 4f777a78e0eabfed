#pragma once

#include <complex>

namespace ripkit {

// Faddeeva function w(z) = exp(-z^2) erfc(-iz), valid on the whole plane.
// Upper half plane uses Weideman's rational expansion (N = 40, ~1e-14 relative).
std::complex<double> faddeeva_w(std::complex<double> z);

// exp(-s) * erf(z) without forming the overflowing factors separately.
std::complex<double> scaled_erf(std::complex<double> z, double s);

inline std::complex<double> erf(std::complex<double> z) { return scaled_erf(z, 0.0); }

}  // namespace ripkit
