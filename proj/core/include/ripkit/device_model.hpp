#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ripkit {

struct TransmonSpec {
  double E_C = 0.0;  // MHz
  double E_J = 0.0;  // MHz
  double n_g = 0.0;

  double omega_bar() const;  // sqrt(8 E_C E_J)
  double epsilon() const;    // sqrt(2 E_C / E_J)
  double n_zpf() const;      // (E_J / 32 E_C)^(1/4)
  void validate(double min_ratio = 10.0) const;
};

struct DeviceSpec {
  std::vector<TransmonSpec> transmons;  // one or two
  double omega_c = 0.0;                 // bare resonator frequency
  std::vector<double> g;                // one coupling per transmon
  std::optional<double> kappa_c;

  std::size_t n_qubits() const { return transmons.size(); }
  void validate() const;
  // Dispersive guard: empty when |g| < min qubit-resonator detuning.
  std::vector<std::string> warnings() const;
};

struct TruncationSpec {
  int n_charge = 30;
  int n_qubit_keep = 10;
  int n_photon = 48;

  static TruncationSpec single_qubit() { return {30, 10, 48}; }
  static TruncationSpec two_qubit() { return {30, 10, 22}; }
  void validate() const;
};

struct TransmonSpectrum {
  Eigen::VectorXd energies;  // ground state pinned to 0
  Eigen::MatrixXd vectors;   // charge basis, columns = retained eigenstates
  Eigen::MatrixXd charge;    // <k|(n - n_g)|l> between retained eigenstates
};

TransmonSpectrum transmon_spectrum(const TransmonSpec& spec, const TruncationSpec& trunc,
                                   bool check_convergence = true);

struct Asymptotics {
  double omega;
  double alpha;
};
Asymptotics asymptotics(double E_C, double E_J);

// Occupations ordered as (qubit a, [qubit b,] photon).
using Occupation = std::vector<int>;

struct LabelConflict {
  Occupation label;
  Eigen::Index winner;
  double winner_overlap;
  Eigen::Index loser;
  double loser_overlap;
};

struct SystemOperators {
  DeviceSpec device;
  TruncationSpec trunc;
  std::vector<int> dims;  // retained levels per transmon, then photons

  // Product basis of transmon eigenstates x Fock states. The Fock states carry
  // the phase convention |n> -> i^n |n>, under which -i(c - c^dag) becomes
  // c + c^dag and every operator is real symmetric.
  Eigen::MatrixXd H;
  Eigen::SparseMatrix<double> Y_c;

  Eigen::VectorXd energies;  // ascending, ground pinned to 0
  Eigen::MatrixXd vectors;   // columns are eigenstates in the product basis
  std::vector<Occupation> labels;     // per eigenstate
  std::vector<double> overlaps;       // |<label|eigenstate>|^2
  std::vector<Eigen::Index> by_label;  // product index -> eigen index
  std::vector<LabelConflict> conflicts;
  std::vector<std::string> warnings;

  Eigen::Index dimension() const { return static_cast<Eigen::Index>(energies.size()); }
  Eigen::Index product_index(const Occupation& occ) const;
  Occupation occupation_of(Eigen::Index product) const;
  // Eigenstate carrying the label. Throws LabelError when the overlap drops
  // below min_overlap (label loss).
  Eigen::Index eigen_index(const Occupation& occ, double min_overlap = 0.3) const;
  double energy(const Occupation& occ, double min_overlap = 0.3) const;
  double overlap(const Occupation& occ) const;
};

inline constexpr double kLabelWarnOverlap = 0.5;
inline constexpr double kLabelLossOverlap = 0.3;

SystemOperators assemble_system(const DeviceSpec& device, const TruncationSpec& trunc);

// 2chi_jc for each qubit from labelled exact energies.
std::vector<double> dispersive_shift_exact(const SystemOperators& sys);
// E11 - E10 - E01 + E00 in the zero-photon sector.
double static_zz_exact(const SystemOperators& sys);

// Dressed quantities read from a labelled system.
struct DressedSpectrum {
  std::vector<double> omega;   // per qubit, E(1_j) - E(0)
  std::vector<double> alpha;   // per qubit, E(2_j) - 2E(1_j) + E(0)
  std::vector<double> two_chi; // per qubit
  double omega_c = 0.0;        // E(1_c) - E(0)
};
DressedSpectrum dressed_spectrum(const SystemOperators& sys);

// --- parameter inversion ---

enum class InversionObjective { exact, asymptotic };

struct QubitTargets {
  double omega01 = 0.0;
  double alpha = 0.0;
  std::optional<double> two_chi;
};

struct InversionTargets {
  std::vector<QubitTargets> qubits;
  std::optional<double> omega_c;  // dressed resonator frequency
  std::vector<double> n_g;        // per qubit, defaults to 0
};

struct InversionResult {
  DeviceSpec device;  // transmons always set; g and omega_c when coupling targeted
  int evaluations = 0;
  double max_residual = 0.0;  // MHz
};

// Bare transmon inversion of (omega01, alpha).
TransmonSpec invert_transmon(double omega01, double alpha, double n_g = 0.0,
                             InversionObjective objective = InversionObjective::exact);

// Full inversion. Without 2chi targets only the bare transmons are solved.
// With 2chi (and omega_c) targets the coupled, dressed system is matched,
// using `trunc` for the exact spectra.
InversionResult invert_parameters(const InversionTargets& targets,
                                  const TruncationSpec& trunc = {30, 10, 12},
                                  const std::optional<DeviceSpec>& seed = std::nullopt);

// Dispersive estimate of g for a target 2chi.
double dispersive_coupling_estimate(double two_chi, double omega_bar_q, double alpha,
                                    double omega_c);

// Stable content hash of a device/truncation pair (cache key).
std::uint64_t content_hash(const DeviceSpec& device, const TruncationSpec& trunc);

}  // namespace ripkit
