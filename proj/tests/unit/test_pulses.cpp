#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ripkit/errors.hpp"
#include "ripkit/pulses.hpp"

namespace ripkit {
namespace {

PulseSpec base() {
  PulseSpec p;
  p.amplitude = 100;
  p.tau = 200;
  p.omega_d = 7000;
  return p;
}

TEST(Pulses, NestedCosineEdgesAndPeak) {
  EXPECT_NEAR(nested_cosine(0.0), 0.0, 1e-15);
  EXPECT_NEAR(nested_cosine(1.0), 0.0, 1e-15);
  EXPECT_NEAR(nested_cosine(0.5), 1.0, 1e-15);
  EXPECT_NEAR(nested_cosine_derivative(0.0), 0.0, 1e-12);
  EXPECT_NEAR(nested_cosine_derivative(1.0), 0.0, 1e-12);
}

TEST(Pulses, AreaMatchesQuadrature) {
  const Pulse p(base());
  const double q = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      [&](double t) { return p.envelope(t).y; }, 0.0, 200.0, 10, 1e-13);
  EXPECT_NEAR(p.area(), q, 1e-8 * q);
}

TEST(Pulses, EqualAreaRatio) {
  EXPECT_NEAR(200.0 / equal_area_sigma(200.0), 7.182, 1e-3);
  for (double tau : {50.0, 120.0, 333.0})
    EXPECT_NEAR(equal_area_sigma(2 * tau), 2 * equal_area_sigma(tau), 1e-9 * tau);
}

TEST(Pulses, GaussianWithEqualAreaHasEqualArea) {
  PulseSpec g = base();
  g.kind = PulseKind::gaussian;
  g.sigma = equal_area_sigma(g.tau);
  EXPECT_NEAR(Pulse(g).area(), Pulse(base()).area(), 1e-8 * Pulse(base()).area());
}

TEST(Pulses, DragQuadratureIsScaledDerivative) {
  PulseSpec p = base();
  p.drag = -40.0;
  const Pulse pl(p);
  for (double t : {13.0, 77.0, 150.0}) {
    const Envelope e = pl.envelope(t);
    const double h = 1e-4;
    const double dy = (pl.envelope(t + h).y - pl.envelope(t - h).y) / (2 * h);
    EXPECT_NEAR(std::abs(e.x), std::abs(dy / (2 * std::numbers::pi * 1e-3 * 40.0)), 1e-6 * std::abs(e.y) + 1e-9);
  }
}

TEST(Pulses, DragNotchesTheSpectrumAtTheDetuning) {
  PulseSpec plain = base();
  PulseSpec drag = base();
  drag.drag = -8.0;
  const double s_plain = std::abs(spectrum(Pulse(plain), 8.0));
  const double s_drag = std::min(std::abs(spectrum(Pulse(drag), 8.0)), std::abs(spectrum(Pulse(drag), -8.0)));
  EXPECT_GT(s_plain, 1.0);
  EXPECT_LT(s_drag, 1e-6 * s_plain);
}

TEST(Pulses, LabDriveOutsideWindowIsZero) {
  const Pulse p(base());
  EXPECT_EQ(p.lab_drive(-1.0), 0.0);
  EXPECT_EQ(p.lab_drive(201.0), 0.0);
}

TEST(Pulses, CustomSamplesReproduceNestedCosine) {
  PulseSpec c = base();
  c.kind = PulseKind::custom;
  for (int k = 0; k <= 400; ++k) c.samples.push_back(nested_cosine(k / 400.0));
  const Pulse pc(c), pn(base());
  for (double t : {10.0, 55.5, 100.0, 180.2}) EXPECT_NEAR(pc.envelope(t).y, pn.envelope(t).y, 1e-6 * 100);
}

TEST(Pulses, InvalidSpecsThrow) {
  PulseSpec g = base();
  g.kind = PulseKind::gaussian;
  g.sigma = 0.0;
  EXPECT_THROW(Pulse{g}, ConfigError);
  PulseSpec t = base();
  t.tau = -1.0;
  EXPECT_THROW(Pulse{t}, ConfigError);
}

}  // namespace
}  // namespace ripkit
