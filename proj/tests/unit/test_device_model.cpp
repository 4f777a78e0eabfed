#include <gtest/gtest.h>

#include <filesystem>

#include "ripkit/cache.hpp"
#include "ripkit/device_model.hpp"
#include "ripkit/errors.hpp"
#include "ripkit/linalg.hpp"

namespace ripkit {
namespace {

DeviceSpec pair_device() {
  DeviceSpec d;
  d.transmons = {{255, 14250, 0}, {275, 17000, 0}};
  d.omega_c = 7000;
  d.g = {150, 85};
  return d;
}

TEST(Transmon, HarmonicFrequencyIsExact) {
  const TransmonSpec t{255, 14250, 0};
  EXPECT_NEAR(t.omega_bar(), 5391.660, 1e-3);
  EXPECT_NEAR(t.epsilon(), std::sqrt(2.0 * 255 / 14250), 1e-15);
}

TEST(Transmon, RejectsChargeRegime) {
  EXPECT_THROW((TransmonSpec{300, 1500, 0}.validate()), ConfigError);
  EXPECT_THROW((TransmonSpec{-1, 1500, 0}.validate()), ConfigError);
}

TEST(Transmon, SpectrumIsPeriodicAndSymmetricInGateCharge) {
  const TruncationSpec tr{30, 8, 2};
  for (double ng : {0.0, 0.13, 0.37}) {
    const auto a = transmon_spectrum({250, 9000, ng}, tr).energies;
    const auto b = transmon_spectrum({250, 9000, ng + 1.0}, tr).energies;
    const auto c = transmon_spectrum({250, 9000, -ng}, tr).energies;
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-7);
    EXPECT_LT((a - c).cwiseAbs().maxCoeff(), 1e-7);
  }
}

TEST(Transmon, AsymptoticInversionRatios) {
  const TransmonSpec lo = invert_transmon(5140, -200, 0.0, InversionObjective::asymptotic);
  const TransmonSpec hi = invert_transmon(6000, -200, 0.0, InversionObjective::asymptotic);
  EXPECT_NEAR(lo.E_J / lo.E_C, 103.29, 0.01 * 103.29);
  EXPECT_NEAR(hi.E_J / hi.E_C, 136.71, 0.01 * 136.71);
}

TEST(Transmon, ExactInversionRoundTrip) {
  const TransmonSpec t = invert_transmon(5140, -205, 0.37);
  const auto e = transmon_spectrum(t, {30, 4, 2}).energies;
  EXPECT_NEAR(e(1) - e(0), 5140, 1e-6);
  EXPECT_NEAR(e(2) - 2 * e(1) + e(0), -205, 1e-6);
}

TEST(System, PairIsSymmetricAndLabelled) {
  const SystemOperators s = assemble_system(pair_device(), {30, 5, 6});
  EXPECT_LT(hermiticity_defect(s.H), 1e-10);
  const Eigen::MatrixXd y = s.Y_c;
  EXPECT_LT((y - y.transpose()).cwiseAbs().maxCoeff(), 1e-12);
  for (const Occupation& o : {Occupation{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {1, 1, 0}})
    EXPECT_GT(s.overlap(o), kLabelWarnOverlap);
  EXPECT_EQ(s.energies(0), 0.0);
}

TEST(System, ExactDispersiveShiftsFrozen) {
  // exact diagonalization at (30, 10, 12); frozen once computed
  const SystemOperators s = assemble_system(pair_device(), {30, 10, 12});
  const auto chi = dispersive_shift_exact(s);
  EXPECT_NEAR(chi[0], -3.95446, 1e-3);
  EXPECT_NEAR(chi[1], -2.82329, 1e-3);
  EXPECT_NEAR(static_zz_exact(s), -0.216976, 1e-4);
}

TEST(Inversion, CoupledTargetsAreMatched) {
  InversionTargets t;
  t.qubits = {{5140, -200, -5.57}};
  t.omega_c = 6971;
  t.n_g = {0.37};
  const InversionResult r = invert_parameters(t);
  const DressedSpectrum d = dressed_spectrum(assemble_system(r.device, {30, 10, 12}));
  EXPECT_NEAR(d.omega[0], 5140, 1e-3);
  EXPECT_NEAR(d.alpha[0], -200, 1e-3);
  EXPECT_NEAR(d.two_chi[0], -5.57, 1e-3);
  EXPECT_NEAR(d.omega_c, 6971, 1e-3);
  EXPECT_LT(r.max_residual, 1e-3);
}

TEST(Cache, HashIsStableAndSensitive) {
  const DeviceSpec d = pair_device();
  DeviceSpec e = d;
  e.g[1] += 1e-9;
  EXPECT_EQ(content_hash(d, {30, 5, 6}), content_hash(pair_device(), {30, 5, 6}));
  EXPECT_NE(content_hash(d, {30, 5, 6}), content_hash(e, {30, 5, 6}));
  EXPECT_NE(content_hash(d, {30, 5, 6}), content_hash(d, {30, 5, 7}));
}

TEST(Cache, RoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "ripkit_cache_test";
  std::filesystem::remove_all(dir);
  const SystemOperators a = cached_assemble(pair_device(), {30, 4, 4}, dir);
  const SystemOperators b = cached_assemble(pair_device(), {30, 4, 4}, dir);
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ((a.energies - b.energies).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ((a.vectors - b.vectors).cwiseAbs().maxCoeff(), 0.0);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace ripkit
