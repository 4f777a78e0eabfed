#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ripkit/device_model.hpp"
#include "ripkit/normal_modes.hpp"
#include "ripkit/pulses.hpp"
#include "ripkit/resonator_response.hpp"

namespace ripkit {

enum class RateModel { jc, kerr, abinitio };
enum class ResponseMode { quadrature, adiabatic1, adiabatic2 };

std::string to_string(RateModel m);

// Gate parameters multiply IZ/2, ZI/2 and ZZ/2 with Z = |0><0| - |1><1|.
// The "full" ZZ rate is 2 * omega_zz.
struct RateSeries {
  std::vector<double> iz, zi, zz;
};

struct EffectiveRates {
  RateModel model = RateModel::kerr;
  std::vector<double> t;  // ns
  RateSeries first;       // first order, drive dependent
  RateSeries second;      // second order, drive dependent (static part removed)
  // Drive-independent second-order parts. For the ab-initio model static_zz
  // also carries chi_ab from the quartic Kerr Hamiltonian.
  double static_iz = 0.0, static_zi = 0.0, static_zz = 0.0;
  std::vector<std::string> warnings;

  std::size_t size() const { return t.size(); }
  double omega_iz(std::size_t k, bool with_static = false) const;
  double omega_zi(std::size_t k, bool with_static = false) const;
  double omega_zz(std::size_t k, bool with_static = false) const;
  // int omega_zz dt, radians.
  double theta_zz(bool with_static = false) const;
};

// Energies of |00>, |01>, |10>, |11> (qubit a first) projected onto IZ, ZI, ZZ.
struct Projection {
  double iz, zi, zz;
};
Projection project(double e00, double e01, double e10, double e11);

// Delta_cd + 2chi_ac n_a + 2chi_bc n_b + alpha_c n_c
struct OperatorDetuning {
  double delta_cd = 0.0;
  double two_chi_ac = 0.0;
  double two_chi_bc = 0.0;
  double alpha_c = 0.0;
  double operator()(int n_a, int n_b, int n_c = 0) const {
    return delta_cd + two_chi_ac * n_a + two_chi_bc * n_b + alpha_c * n_c;
  }
};

// Generic second-order kernel on a uniform grid:
//   Re{-i f*(t) int^t f(t') exp(-i Omega (t - t')) dt'} in MHz,
// with f in MHz and Omega in MHz (Im Omega <= 0 for decay). With `prehistory`
// the coupling is taken as constant f(t0) before the first sample.
// `fdot` (1/ns) may be empty, in which case it is estimated from the samples.
std::vector<double> response_kernel(const std::vector<cplx>& f, const std::vector<cplx>& fdot,
                                    double dt, cplx omega, ResponseMode mode, bool prehistory = true);

// A_eta(t) = Im{int^t eta(t) eta*(t') exp(i Delta (t - t')) dt'} in photons/MHz,
// with Delta = detuning at the given occupations (and -i kappa/2 when set).
std::vector<double> response_function(const ResonatorTrajectory& tr, const OperatorDetuning& detuning,
                                      int n_a, int n_b, ResponseMode mode,
                                      std::optional<double> kappa_c = std::nullopt,
                                      bool prehistory = true);

// Two-level qubits, cross-Kerr in the perturbation. chi = (2chi)/2.
EffectiveRates jc_rates(double chi_ac, double chi_bc, double delta_cd, const ResonatorTrajectory& tr,
                        ResponseMode mode = ResponseMode::adiabatic1);

// Multilevel Kerr model with qubit-state-dependent resonator detuning.
EffectiveRates kerr_rates(double chi_ac, double chi_bc, double delta_cd, const ResonatorTrajectory& tr,
                          ResponseMode mode = ResponseMode::adiabatic1,
                          std::optional<double> kappa_c = std::nullopt);

// Closed-form adiabatic Kerr omega_zz at a fixed photon number.
double kerr_omega_zz(double chi_ac, double chi_bc, double delta_cd, double photons);

struct StaticZZ {
  double J;
  double omega_zz0;
};
// J from the bare frequencies and couplings; omega_zz0 from the supplied
// (dressed) qubit frequencies and anharmonicities.
StaticZZ static_zz(const DeviceSpec& device, double omega_a, double omega_b, double alpha_a,
                   double alpha_b);

// --- approximate ab-initio model ---

struct AbinitioOptions {
  ResponseMode mode = ResponseMode::adiabatic1;
  std::optional<double> kappa_c;
  // Drive amplitude is reconstructed from the trajectory through the Duffing
  // equation with this resonator anharmonicity (defaults to the trajectory's).
  std::optional<double> alpha_c;
};

// Second-order energy correction (MHz) of the normal-mode Fock state
// (n_a, n_b, n_c) along the trajectory, including the first-order dynamic shift.
struct StateEnergy {
  std::vector<double> first;
  std::vector<double> second;       // drive dependent
  double second_static = 0.0;       // at eta = 0
  double coupling_ratio = 0.0;      // max |lambda / Delta| over coupled states
};
StateEnergy abinitio_state_energy(const QuarticCoefficients& q, double delta_cd,
                                  const ResonatorTrajectory& tr, const Occupation& occ,
                                  const AbinitioOptions& opts = {});

EffectiveRates abinitio_rates(const QuarticCoefficients& q, double delta_cd, const ResonatorTrajectory& tr,
                              const AbinitioOptions& opts = {});

// --- calibration ---

enum class CalibrationParameter { tau, amplitude };
enum class TrajectorySource { adiabatic, duffing };

struct CalibrationProblem {
  RateModel model = RateModel::kerr;
  double chi_ac = 0.0;
  double chi_bc = 0.0;
  double delta_cd = 0.0;
  double alpha_c = 0.0;
  PulseSpec pulse;  // amplitude and tau used as fixed values / initial guesses
  double theta_target = 0.0;
  CalibrationParameter free = CalibrationParameter::tau;
  TrajectorySource source = TrajectorySource::adiabatic;
  double static_zz = 0.0;  // added over the gate when include_static
  bool include_static = false;
  double tau_max = 1e5;      // ns
  double amplitude_max = 1e4;  // MHz
};

struct CalibrationResult {
  PulseSpec pulse;  // tau == 0 with zero amplitude for a zero target
  double theta = 0.0;
  int evaluations = 0;
};

// Accumulated theta_zz for a given pulse under the problem's model.
double accumulated_theta(const CalibrationProblem& p, const PulseSpec& pulse);
CalibrationResult calibrate_gate(const CalibrationProblem& p);

// --- decoherence ---

struct DecoherenceInputs {
  DeviceSpec device;
  std::vector<double> chi;  // chi_jc per qubit (half the dispersive shift)
  double delta_cd = 0.0;
  double kappa_c = 0.0;
  std::vector<double> t1_us;  // per qubit
  double tau = 0.0;           // ns
};

struct DecoherenceEstimates {
  std::vector<double> gamma_p;          // MHz, per qubit
  std::vector<std::vector<double>> gamma_phi;  // MHz, per qubit along the trajectory
  std::vector<double> gamma_phi_mean;   // MHz, averaged over [t0, t0 + tau]
  double error_dephasing = 0.0;
  double error_purcell = 0.0;
  double error_t1 = 0.0;
  double error_incoherent = 0.0;
};
DecoherenceEstimates decoherence_estimates(const DecoherenceInputs& in, const ResonatorTrajectory& tr);

}  // namespace ripkit
