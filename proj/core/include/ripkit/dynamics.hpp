#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ripkit/device_model.hpp"
#include "ripkit/pulses.hpp"

namespace ripkit {

struct EvolveOptions {
  std::optional<double> t_end;  // defaults to the pulse end
  double rel_tol = 1e-14;
  double abs_tol = 1e-14;
  std::size_t samples = 0;       // dense samples over [start, t_end], endpoints included
  double sparsity = 1e-10;       // drop |Y_mn| below this fraction of max |Y|
  double norm_tolerance = 1e-9;  // NumericalError beyond this drift
  double truncation_warn = 1e-6;
};

// States are amplitudes in the labelled eigenbasis of the static Hamiltonian,
// Schroedinger picture.
struct EvolutionResult {
  double t_start = 0.0;
  double t_end = 0.0;
  Eigen::VectorXcd initial;
  Eigen::VectorXcd final_state;
  std::vector<double> sample_t;
  std::vector<Eigen::VectorXcd> samples;
  double norm_drift = 0.0;     // max |norm - 1| over the sampled times
  double top_photon = 0.0;     // max population of the highest retained Fock state
  double wall_seconds = 0.0;
  std::size_t rhs_evaluations = 0;
  std::vector<std::string> warnings;
};

// Basis vector of the eigenstate carrying `label`.
Eigen::VectorXcd labeled_state(const SystemOperators& sys, const Occupation& label);

EvolutionResult evolve(const SystemOperators& sys, const PulseSpec& pulse, const Eigen::VectorXcd& psi0,
                       const EvolveOptions& opts = {});
// Several initial states sharing one prepared drive operator.
std::vector<EvolutionResult> evolve(const SystemOperators& sys, const PulseSpec& pulse,
                                    const std::vector<Eigen::VectorXcd>& psi0, const EvolveOptions& opts = {});

struct LeakageReport {
  std::string initial;   // tag
  double total = 0.0;    // 1 - P(qubits in {0,1}, no photons)
  double resonator = 0.0;  // P(n_c >= 1), all qubit states
  double qubit = 0.0;      // P(any qubit >= 2), all photon numbers
  double shared = 0.0;     // counted in both; total = resonator + qubit - shared
  std::map<Occupation, double> states;  // populations above the floor, outside the subspace
};

LeakageReport leakage_report(const SystemOperators& sys, const Eigen::VectorXcd& final_state,
                             const std::string& tag = "", double floor = 1e-12);
LeakageReport leakage_report(const SystemOperators& sys, const EvolutionResult& result,
                             const std::string& tag = "", double floor = 1e-12);

// Computational labels (qubits in {0,1}, zero photons) in projection order:
// qubit a is the most significant.
std::vector<Occupation> computational_labels(const SystemOperators& sys);

struct PropagatorPhases {
  // Angles multiplying IZ/2, ZI/2, ZZ/2 accumulated over the window so that
  // theta = int omega dt (radians). theta_zz includes the static ZZ;
  // theta_iz and theta_zi are read in the frame of the dressed energies.
  double theta_iz = 0.0;
  double theta_zi = 0.0;
  double theta_zz = 0.0;
  double defect = 0.0;  // 1 - smallest singular value of the computational block
  double norm_drift = 0.0;  // largest drift over the four runs
  Eigen::Matrix4cd block;
};

// Two-qubit systems only. `samples` controls the phase unwrapping resolution.
PropagatorPhases propagator_phases(const SystemOperators& sys, const PulseSpec& pulse,
                                   const EvolveOptions& opts = {}, std::size_t samples = 400);

struct AveragedLeakage {
  double mean = 0.0;
  std::vector<LeakageReport> reports;
};
AveragedLeakage averaged_leakage(const SystemOperators& sys, const PulseSpec& pulse,
                                 const std::vector<Occupation>& initial, const EvolveOptions& opts = {});

struct GateChargeScan {
  std::vector<double> n_g;
  std::vector<double> leakage;
  double worst = 0.0;
  double worst_n_g = 0.0;
};
// Sets every transmon's gate charge to each grid value in turn.
GateChargeScan gate_charge_worst_case(const DeviceSpec& device, const TruncationSpec& trunc,
                                      const PulseSpec& pulse, const std::vector<Occupation>& initial,
                                      const std::vector<double>& n_g_grid, const EvolveOptions& opts = {});

}  // namespace ripkit
