#include <gtest/gtest.h>

#include "ripkit/dynamics.hpp"
#include "ripkit/errors.hpp"

namespace ripkit {
namespace {

const SystemOperators& small_system() {
  static const SystemOperators s = [] {
    InversionTargets t;
    t.qubits = {{5140, -205, -5.57}};
    t.omega_c = 6971;
    t.n_g = {0.37};
    return assemble_system(invert_parameters(t).device, {30, 5, 8});
  }();
  return s;
}

PulseSpec drive(double delta, double photons, double tau) {
  PulseSpec p;
  p.amplitude = 2 * std::abs(delta) * std::sqrt(photons);
  p.omega_d = 6971 - delta;
  p.tau = tau;
  return p;
}

TEST(Dynamics, NoDriveKeepsTheState) {
  const SystemOperators& s = small_system();
  const Eigen::VectorXcd psi = (labeled_state(s, {0, 0}) + labeled_state(s, {1, 0})).normalized();
  const EvolutionResult r = evolve(s, drive(-50, 0.0, 50), psi);
  // without drive only the phases move
  EXPECT_LT((psi.cwiseAbs() - r.final_state.cwiseAbs()).norm(), 1e-9);
  const LeakageReport L = leakage_report(s, r);
  EXPECT_LT(L.total, 1e-14);
  EXPECT_TRUE(L.states.empty());
}

TEST(Dynamics, FarDetunedWeakDriveDoesNotLeak) {
  const SystemOperators& s = small_system();
  const EvolutionResult r = evolve(s, drive(-500, 0.05, 100), labeled_state(s, {0, 0}));
  EXPECT_LT(r.norm_drift, 1e-9);
  EXPECT_LT(leakage_report(s, r).total, 1e-8);
}

TEST(Dynamics, NormIsConservedAlongSamples) {
  const SystemOperators& s = small_system();
  EvolveOptions o;
  o.samples = 21;
  const EvolutionResult r = evolve(s, drive(-50, 1.0, 60), labeled_state(s, {1, 0}), o);
  ASSERT_EQ(r.samples.size(), 21u);
  for (const auto& x : r.samples) EXPECT_NEAR(x.norm(), 1.0, 1e-9);
  EXPECT_LT(r.norm_drift, 1e-9);
}

TEST(Dynamics, LeakageDecompositionIsConsistent) {
  const SystemOperators& s = small_system();
  const EvolutionResult r = evolve(s, drive(-20, 2.0, 40), labeled_state(s, {0, 0}));
  const LeakageReport L = leakage_report(s, r, "", 0.0);
  // total is 1 - P(subspace), so it carries the norm drift
  EXPECT_NEAR(L.total, L.resonator + L.qubit - L.shared, 1e-9);
  double sum = 0.0;
  for (const auto& [occ, p] : L.states) {
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
    sum += p;
  }
  EXPECT_NEAR(sum, L.total, 1e-9);
  EXPECT_GT(L.resonator, 0.0);  // short pulse near the resonator leaves photons behind
}

TEST(Dynamics, RejectsBadInput) {
  const SystemOperators& s = small_system();
  EXPECT_THROW(evolve(s, drive(-50, 1.0, 50), Eigen::VectorXcd::Zero(3)), ConfigError);
  Eigen::VectorXcd twice = 2.0 * labeled_state(s, {0, 0});
  EXPECT_THROW(evolve(s, drive(-50, 1.0, 50), twice), ConfigError);
}

TEST(Dynamics, ComputationalLabelsOrdering) {
  const auto labels = computational_labels(small_system());
  ASSERT_EQ(labels.size(), 2u);
  EXPECT_EQ(labels[0], (Occupation{0, 0}));
  EXPECT_EQ(labels[1], (Occupation{1, 0}));
}

}  // namespace
}  // namespace ripkit
