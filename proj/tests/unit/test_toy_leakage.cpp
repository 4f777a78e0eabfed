#include <gtest/gtest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "ripkit/errors.hpp"
#include "ripkit/toy_leakage.hpp"

namespace ripkit {
namespace {

constexpr double kTau = 40.0;

// sin^2 envelopes with distinct phases so every path contributes
ThreeLevelSpec toy(double s) {
  ThreeLevelSpec spec;
  spec.delta_eg = 60.0;
  spec.delta_fg = 110.0;
  auto env = [](double t) { return std::pow(std::sin(M_PI * t / kTau), 2); };
  spec.lambda_ge = [=](double t) { return std::complex<double>(s * env(t), 0.0); };
  spec.lambda_gf = [=](double t) { return std::complex<double>(0.0, 0.3 * s * env(t)); };
  spec.lambda_ef = [=](double t) { return std::complex<double>(1.4 * s * env(t), 0.0); };
  return spec;
}

TEST(Magnus, FirstOrderMatchesSingleIntegral) {
  const ThreeLevelSpec spec = toy(0.01);
  const auto u = oracle::three_level_propagator(spec, kTau);
  const auto a = magnus_amplitude(spec, Level::g, Level::e, 1, kTau);
  EXPECT_LT(std::abs(a - u(1, 0)) / std::abs(u(1, 0)), 1e-3);
}

TEST(Magnus, SecondOrderAgreesWithDirectIntegration) {
  const ThreeLevelSpec spec = toy(0.5);
  const auto u = oracle::three_level_propagator(spec, kTau);
  for (auto [from, to] : {std::pair{Level::g, Level::f}, {Level::g, Level::e}, {Level::e, Level::f}}) {
    const auto a = magnus_amplitude(spec, from, to, 2, kTau);
    EXPECT_LT(std::abs(a - u(static_cast<int>(to), static_cast<int>(from))), 1e-4);
  }
}

TEST(Magnus, SecondOrderErrorIsCubic) {
  std::vector<double> x, y;
  for (double s : {0.25, 0.5, 1.0, 2.0}) {
    const ThreeLevelSpec spec = toy(s);
    const auto u = oracle::three_level_propagator(spec, kTau);
    const double err = std::abs(magnus_amplitude(spec, Level::g, Level::f, 2, kTau) - u(2, 0));
    x.push_back(std::log(s));
    y.push_back(std::log(err));
  }
  const double n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  EXPECT_NEAR(slope, 3.0, 0.3);
}

TEST(Magnus, RejectsUnsupportedOrder) {
  EXPECT_THROW(magnus_amplitude(toy(1.0), Level::g, Level::f, 3, kTau), ConfigError);
}

TEST(LeakageBound, TraceIdentityOnRandomUnitaries) {
  std::mt19937_64 rng(8);
  const std::vector<int> comp{0, 1, 2, 3};
  for (int k = 0; k < 200; ++k) {
    const Eigen::MatrixXcd u = oracle::random_unitary(9, rng);
    const Eigen::MatrixXcd ur = u.topLeftCorner(4, 4);
    const double trace = (ur * ur.adjoint()).trace().real();
    const double p = average_leakage(u, comp);
    EXPECT_NEAR(leakage_error_bound(p, 4).trace, trace, 1e-10);
  }
}

TEST(LeakageBound, Values) {
  const LeakageBound b = leakage_error_bound(1e-3, 4);
  EXPECT_DOUBLE_EQ(b.trace, 4 * (1 - 1e-3));
  EXPECT_NEAR(b.fidelity, 1 - 1e-3, 1e-15);
  EXPECT_NEAR(b.error_lower, 1e-3, 1e-15);
  EXPECT_THROW(leakage_error_bound(-0.1, 4), ConfigError);
  EXPECT_THROW(leakage_error_bound(1.1, 4), ConfigError);
  EXPECT_THROW(leakage_error_bound(0.1, 1), ConfigError);
}

}  // namespace
}  // namespace ripkit
