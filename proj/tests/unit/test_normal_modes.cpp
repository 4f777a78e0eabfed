#include <gtest/gtest.h>

#include <random>

#include "ripkit/normal_modes.hpp"

namespace ripkit {
namespace {

DeviceSpec pair_device() {
  DeviceSpec d;
  d.transmons = {{255, 14250, 0}, {275, 17000, 0}};
  d.omega_c = 7000;
  d.g = {150, 85};
  return d;
}

// Hybridization matrices as printed for the pair device.
Eigen::Matrix3d printed_U() {
  Eigen::Matrix3d u;
  u << 0.994229, -0.0217913, 0.103214, 0.0112824, 0.994923, 0.0995246, -0.0805908, -0.0853793, 0.992933;
  return u;
}
Eigen::Matrix3d printed_V() {
  Eigen::Matrix3d v;
  v << 0.997153, -0.0192382, 0.0792791, 0.0128348, 0.996284, 0.0867091, -0.104939, -0.0978607, 0.990185;
  return v;
}

TEST(NormalModes, FrequenciesAndMatricesMatchPrinted) {
  const HybridizationData h = bogoliubov(pair_device());
  EXPECT_NEAR(h.omega_tilde(0), 5375.850, 5e-3);
  EXPECT_NEAR(h.omega_tilde(1), 6107.200, 5e-3);
  EXPECT_NEAR(h.omega_tilde(2), 7019.430, 5e-3);
  EXPECT_LT((h.U - printed_U()).cwiseAbs().maxCoeff(), 1e-5);
  EXPECT_LT((h.V - printed_V()).cwiseAbs().maxCoeff(), 1e-5);
}

TEST(NormalModes, QuarticTableFromPrintedMatrices) {
  const DeviceSpec d = pair_device();
  const Eigen::Vector3d wt(5375.850, 6107.200, 7019.430);
  const Eigen::Vector2d eps(d.transmons[0].epsilon(), d.transmons[1].epsilon());
  const Eigen::Vector2d wb(d.transmons[0].omega_bar(), d.transmons[1].omega_bar());
  const QuarticCoefficients q = quartic_coefficients(printed_U(), printed_V(), wt, eps, wb);
  auto rel = [](double x, double ref) { return std::abs(x - ref) / std::abs(ref); };
  EXPECT_LT(rel(q.alpha(0), -249.164), 5e-3);
  EXPECT_LT(rel(q.alpha(1), -269.458), 5e-3);
  EXPECT_LT(rel(q.alpha(2), -0.056), 5e-3);
  EXPECT_LT(rel(q.two_chi(0, 1), -0.309), 5e-3);
  EXPECT_LT(rel(q.two_chi(0, 2), -5.371), 5e-3);
  EXPECT_LT(rel(q.two_chi(1, 2), -5.395), 5e-3);
  EXPECT_LT(rel(q.delta_S(0), -252.004), 5e-3);
  EXPECT_LT(rel(q.delta_S(2), -5.439), 5e-3);
}

TEST(NormalModes, NumberQuadratureEqualsCrossKerr) {
  const DeviceSpec d = pair_device();
  const QuarticCoefficients q = quartic_coefficients(bogoliubov(d), d);
  EXPECT_NEAR(q.nq(0, 2), q.two_chi(0, 2), 1e-9);
  EXPECT_NEAR(q.nq(1, 2), q.two_chi(1, 2), 1e-9);
  EXPECT_NEAR(duffing_parameters(q).alpha_c, q.alpha(2), 1e-12);
}

TEST(NormalModes, SymplecticConditionOnRandomDevices) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> ec(150, 350), ratio(40, 150), g(20, 200), wc(6000, 8500);
  for (int k = 0; k < 100; ++k) {
    DeviceSpec d;
    for (int j = 0; j < 2; ++j) {
      const double c = ec(rng);
      d.transmons.push_back({c, c * ratio(rng), 0.0});
      d.g.push_back(g(rng));
    }
    d.omega_c = wc(rng);
    const HybridizationData h = bogoliubov(d);
    const Eigen::MatrixXd id = h.U.transpose() * h.V;
    EXPECT_LT((id - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-10) << "device " << k;
  }
}

}  // namespace
}  // namespace ripkit
