#include <gtest/gtest.h>

#include "ripkit/resonator_response.hpp"

namespace ripkit {
namespace {

TEST(Duffing, LinearGaussianMatchesClosedForm) {
  PulseSpec p;
  p.kind = PulseKind::gaussian;
  p.amplitude = 100;
  p.tau = 200;
  p.sigma = 15;  // edge pedestal below 1e-9
  p.omega_d = 7000;
  const ResonatorTrajectory tr = duffing_response(-30, 0.0, Pulse(p));
  double err = 0.0;
  for (std::size_t k = 0; k < tr.size(); ++k)
    err = std::max(err, std::abs(tr.eta[k] - gaussian_linear_analytic(-30, 100, 15, 100, tr.t(k))));
  EXPECT_LT(err, 1e-6);
}

TEST(Duffing, PlateauPhotonNumber) {
  PulseSpec p;
  p.amplitude = 316.227;
  p.tau = 200;
  p.omega_d = 7050;
  const ResonatorTrajectory tr = duffing_response(-50, 0.0, Pulse(p));
  EXPECT_NEAR(tr.photons(100.0), 10.0, 0.5);
}

TEST(Duffing, SteadyStateLinearLimit) {
  const SteadyState s = steady_state(-50, 0.0, 100);
  EXPECT_NEAR(s.exact.real(), 1.0, 1e-12);
  EXPECT_NEAR(s.exact.imag(), 0.0, 1e-12);
  EXPECT_FALSE(s.bistable);
}

TEST(Duffing, DragSuppressesResidualPhotons) {
  for (double d : {-20.0, -30.0, -40.0, -50.0, 20.0, 50.0}) {
    PulseSpec a;
    a.amplitude = 2 * std::abs(d) * std::sqrt(10.0);
    a.tau = 200;
    a.omega_d = 7000;
    PulseSpec b = a;
    b.drag = d;
    const double plain = duffing_response(d, 0.0, Pulse(a)).residual();
    const double with = duffing_response(d, 0.0, Pulse(b)).residual();
    EXPECT_LE(10.0 * with, plain) << "delta " << d;
  }
}

TEST(Duffing, ZeroDriveStaysEmpty) {
  PulseSpec p;
  p.amplitude = 0.0;
  p.tau = 100;
  p.omega_d = 7000;
  const ResonatorTrajectory tr = duffing_response(-30, -0.05, Pulse(p));
  EXPECT_EQ(tr.peak_photons(), 0.0);
}

TEST(Duffing, LeakageMeasureDecreasesWithSmootherPulses) {
  // residual-to-peak ratio falls off like exp(-theta^2) once theta > 1
  EXPECT_GT(leakage_measure(2.0, 20.0), 10.0 * leakage_measure(3.0, 20.0));
  EXPECT_EQ(leakage_measure(0.0, 20.0), 0.0);
}

}  // namespace
}  // namespace ripkit
