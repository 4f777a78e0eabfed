#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ripkit/device_model.hpp"

namespace ripkit {

enum class CollisionCategory { qubit_qubit, qubit_resonator, three_body };
std::string to_string(CollisionCategory c);

// Occupations are always (n_a, n_b, n_c); single-qubit devices keep n_b = 0.
struct CollisionSpec {
  std::array<int, 3> left{};
  std::array<int, 3> right{};

  CollisionCategory category() const;
  // Same pair with both photon numbers raised by k.
  CollisionSpec shifted(int k) const;
  std::string label() const;  // e.g. "|6_a,0_b,0_c> ~ |0_a,0_b,4_c>"
  bool operator==(const CollisionSpec& o) const { return left == o.left && right == o.right; }
};

// Undriven Kerr spectrum used by the closed-form conditions. The qubit
// anharmonicities are the unknown (alpha_a = alpha_b = alpha).
struct KerrSpectrum {
  double omega_a = 0.0;
  double omega_b = 0.0;
  double omega_c = 0.0;
  double two_chi_ac = 0.0;
  double two_chi_bc = 0.0;
  double two_chi_ab = 0.0;

  double energy(const std::array<int, 3>& n, double alpha) const;
};

enum class CollisionModel { kerr, exact };

struct AvoidedCrossing {
  double alpha_lo = 0.0;
  double alpha_hi = 0.0;
  double gap = 0.0;  // smallest |E_left - E_right| seen on the labelled edges, MHz
};

struct CollisionRecord {
  CollisionSpec spec;
  CollisionModel model = CollisionModel::kerr;
  double alpha = 0.0;      // root for the device as given, MHz
  double intercept = 0.0;  // alpha*(n_c = 0), n_c = photons of the left state
  std::optional<double> slope;  // MHz per photon
  int multiplicity = 1;
  std::vector<AvoidedCrossing> avoided;  // label-loss intervals (exact scans)
  std::string provenance;
};

// alpha* = intercept + slope * n_c from the Kerr condition E_left = E_right.
CollisionRecord kerr_collision(const CollisionSpec& spec, const KerrSpectrum& kerr);

struct EnumerationBounds {
  int max_level = 9;    // per qubit
  int max_photons = 5;
  int n_qubits = 1;
  double window = 40.0;  // MHz
  // Either a fixed alpha or a range; with a range a pair qualifies when
  // |E_left - E_right| <= window somewhere inside it.
  double alpha = -200.0;
  std::optional<std::pair<double, double>> alpha_range;
  std::optional<CollisionCategory> category;
  bool require_computational = true;  // one side has qubits in {0, 1}
};
std::vector<CollisionSpec> enumerate_candidates(const KerrSpectrum& kerr, const EnumerationBounds& bounds);

struct ExactScanOptions {
  TruncationSpec trunc{30, 10, 12};
  double tolerance = 0.05;  // MHz bracket width for roots
  bool fit_slope = false;   // repeat the scan one photon up
  std::vector<int> scanned_qubits;  // default: all
};

// Holds (omega01, omega_c, 2chi) of `targets` fixed while the anharmonicity
// of the scanned qubits runs over [alpha_lo, alpha_hi] in `step` increments.
// One record per root; all records of a spec share its multiplicity.
std::vector<CollisionRecord> exact_collision_scan(const InversionTargets& targets,
                                                  const std::vector<CollisionSpec>& specs, double alpha_lo,
                                                  double alpha_hi, double step,
                                                  const ExactScanOptions& opts = {});

struct CollisionMargin {
  CollisionSpec spec;
  double nearest_alpha = 0.0;
  double margin = 0.0;  // |alpha_device - nearest_alpha|
};
std::vector<CollisionMargin> collision_margin(double alpha_device, const std::vector<CollisionRecord>& records);

}  // namespace ripkit
