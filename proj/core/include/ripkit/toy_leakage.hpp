#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

namespace ripkit {

using Coupling = std::function<std::complex<double>(double)>;  // MHz, t in ns

// Three levels {g, e, f} with energies {0, delta_eg, delta_fg} (MHz) and
// pairwise couplings; lambda_jk is the <k|H|j> element (lower triangle).
struct ThreeLevelSpec {
  double delta_eg = 0.0;
  double delta_fg = 0.0;
  Coupling lambda_ge;
  Coupling lambda_gf;
  Coupling lambda_ef;

  // Interaction-frame Hamiltonian in rad/ns.
  Eigen::Matrix3cd interaction(double t) const;
};

enum class Level { g = 0, e = 1, f = 2 };

struct MagnusOptions {
  double tolerance = 1e-10;
  int max_refinements = 14;
};

// <to| U_I(tau, 0) |from> from the Magnus generator truncated at `order` (1 or 2),
// U ~ 1 - i K1 - i K2 - K1^2 / 2.
std::complex<double> magnus_amplitude(const ThreeLevelSpec& spec, Level from, Level to, int order, double tau,
                                      const MagnusOptions& opts = {});

struct LeakageBound {
  double trace;           // Tr(U_r U_r^dag) = d (1 - p_L)
  double fidelity;        // ~ 1 - p_L
  double error_lower;     // ~ p_L
};
LeakageBound leakage_error_bound(double p_leak, int d);

// Average leakage out of the computational subspace (indices `comp`) for a
// unitary on the full space, summed state by state.
double average_leakage(const Eigen::MatrixXcd& u, const std::vector<int>& comp);

}  // namespace ripkit
