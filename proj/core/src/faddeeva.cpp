#include "ripkit/faddeeva.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace ripkit {

namespace {

constexpr int kN = 40;

struct Weideman {
  std::array<double, kN> a{};
  double L = 0.0;

  Weideman() {
    constexpr int M = 2 * kN;
    constexpr int M2 = 2 * M;
    L = std::sqrt(kN / std::sqrt(2.0));
    std::array<double, 2 * M - 1> f{};
    for (int k = -M + 1; k < M; ++k) {
      const double t = L * std::tan(0.5 * k * std::numbers::pi / M);
      f[k + M - 1] = std::exp(-t * t) * (L * L + t * t);
    }
    for (int n = 1; n <= kN; ++n) {
      double s = 0.0;
      for (int k = -M + 1; k < M; ++k) s += f[k + M - 1] * std::cos(2.0 * std::numbers::pi * n * k / M2);
      a[n - 1] = s / M2;
    }
  }
};

const Weideman& table() {
  static const Weideman w;
  return w;
}

std::complex<double> w_upper(std::complex<double> z) {
  const auto& t = table();
  const std::complex<double> iz(-z.imag(), z.real());
  const std::complex<double> den = t.L - iz;
  const std::complex<double> Z = (t.L + iz) / den;
  std::complex<double> p = 0.0;
  for (int n = kN - 1; n >= 0; --n) p = p * Z + t.a[n];
  return 2.0 * p / (den * den) + (1.0 / std::sqrt(std::numbers::pi)) / den;
}

}  // namespace

std::complex<double> faddeeva_w(std::complex<double> z) {
  if (z.imag() >= 0.0) return w_upper(z);
  return 2.0 * std::exp(-z * z) - w_upper(-z);
}

std::complex<double> scaled_erf(std::complex<double> z, double s) {
  // erf(z) = 1 - exp(-z^2) w(iz) for Re z >= 0, odd continuation otherwise.
  const std::complex<double> i(0.0, 1.0);
  const double sign = z.real() >= 0.0 ? 1.0 : -1.0;
  const std::complex<double> zz = sign * z;
  return sign * (std::exp(-s) - std::exp(-s - zz * zz) * w_upper(i * zz));
}

}  // namespace ripkit
