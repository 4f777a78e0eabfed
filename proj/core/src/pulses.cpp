#include "ripkit/pulses.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

#include "ripkit/errors.hpp"
#include "ripkit/units.hpp"

namespace ripkit {

using std::numbers::pi;

struct Pulse::Spline {
  boost::math::interpolators::cardinal_cubic_b_spline<double> s;
};

double nested_cosine(double x) { return 0.5 * (std::cos(pi * std::cos(pi * x)) + 1.0); }

double nested_cosine_derivative(double x) {
  return 0.5 * std::sin(pi * std::cos(pi * x)) * pi * std::sin(pi * x) * pi;
}

double truncated_gaussian(double t, double sigma, double tau) {
  const double floor = std::exp(-tau * tau / (8.0 * sigma * sigma));
  const double d = t - 0.5 * tau;
  return (std::exp(-d * d / (2.0 * sigma * sigma)) - floor) / (1.0 - floor);
}

namespace {
double truncated_gaussian_derivative(double t, double sigma, double tau) {
  const double floor = std::exp(-tau * tau / (8.0 * sigma * sigma));
  const double d = t - 0.5 * tau;
  return -d / (sigma * sigma) * std::exp(-d * d / (2.0 * sigma * sigma)) / (1.0 - floor);
}
}  // namespace

double nested_cosine_area(double tau) {
  return 0.5 * tau * (1.0 + boost::math::cyl_bessel_j(0, pi));
}

double truncated_gaussian_area(double sigma, double tau) {
  const double floor = std::exp(-tau * tau / (8.0 * sigma * sigma));
  const double core = std::sqrt(2.0 * pi) * sigma * std::erf(tau / (2.0 * std::sqrt(2.0) * sigma));
  return (core - tau * floor) / (1.0 - floor);
}

double equal_area_sigma(double tau) {
  if (!(tau > 0.0)) throw ConfigError("equal_area_sigma: tau must be positive");
  // Solve on the unit interval and rescale; the ratio is scale free.
  const double target = nested_cosine_area(1.0);
  auto f = [&](double s) { return truncated_gaussian_area(s, 1.0) - target; };
  boost::uintmax_t iters = 200;
  const auto br = boost::math::tools::toms748_solve(f, 0.02, 2.0, boost::math::tools::eps_tolerance<double>(53), iters);
  return tau * 0.5 * (br.first + br.second);
}

Pulse::Pulse(PulseSpec spec) : spec_(std::move(spec)) {
  if (!(spec_.tau > 0.0)) throw ConfigError("pulse: tau must be positive");
  if (spec_.kind == PulseKind::gaussian && !(spec_.sigma > 0.0))
    throw ConfigError("pulse: gaussian width must be positive");
  if (spec_.drag && *spec_.drag == 0.0) throw ConfigError("pulse: DRAG detuning must be non-zero");
  if (spec_.kind == PulseKind::custom) {
    if (spec_.samples.size() < 4) throw ConfigError("pulse: custom pulse needs at least 4 samples");
    const double h = spec_.tau / static_cast<double>(spec_.samples.size() - 1);
    spline_ = std::make_shared<Spline>(Spline{boost::math::interpolators::cardinal_cubic_b_spline<double>(
        spec_.samples.begin(), spec_.samples.end(), 0.0, h)});
  }
}

double Pulse::shape(double t) const {
  const double s = t - spec_.t0;
  if (s < 0.0 || s > spec_.tau) return 0.0;
  switch (spec_.kind) {
    case PulseKind::nested_cosine:
      return nested_cosine(s / spec_.tau);
    case PulseKind::gaussian:
      return truncated_gaussian(s, spec_.sigma, spec_.tau);
    case PulseKind::custom:
      return spline_->s(s);
  }
  return 0.0;
}

double Pulse::shape_derivative(double t) const {
  const double s = t - spec_.t0;
  if (s < 0.0 || s > spec_.tau) return 0.0;
  switch (spec_.kind) {
    case PulseKind::nested_cosine:
      return nested_cosine_derivative(s / spec_.tau) / spec_.tau;
    case PulseKind::gaussian:
      return truncated_gaussian_derivative(s, spec_.sigma, spec_.tau);
    case PulseKind::custom:
      return spline_->s.prime(s);
  }
  return 0.0;
}

Envelope Pulse::envelope(double t) const {
  Envelope e;
  e.y = spec_.amplitude * shape(t);
  if (spec_.drag) e.x = spec_.amplitude * shape_derivative(t) / rad_per_ns(*spec_.drag);
  return e;
}

double Pulse::lab_drive(double t) const {
  const Envelope e = envelope(t);
  const double ph = phase(spec_.omega_d, t);
  return -(e.x * std::cos(ph) + e.y * std::sin(ph));
}

double Pulse::area() const {
  if (spec_.kind == PulseKind::nested_cosine) return spec_.amplitude * nested_cosine_area(spec_.tau);
  if (spec_.kind == PulseKind::gaussian)
    return spec_.amplitude * truncated_gaussian_area(spec_.sigma, spec_.tau);
  return std::real(spectrum(*this, 0.0));
}

std::complex<double> spectrum(const Pulse& pulse, double f) {
  constexpr int kPanels = 256;
  const double a = pulse.start(), b = pulse.end();
  const double h = (b - a) / kPanels;
  const double w = rad_per_ns(f);
  std::complex<double> acc = 0.0;
  for (int k = 0; k < kPanels; ++k) {
    const double lo = a + k * h;
    acc += boost::math::quadrature::gauss<double, 20>::integrate(
        [&](double t) { return pulse.complex_envelope(t) * std::exp(std::complex<double>(0.0, -w * t)); },
        lo, lo + h);
  }
  return acc;
}

}  // namespace ripkit
