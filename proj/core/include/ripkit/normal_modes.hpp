#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ripkit/device_model.hpp"

namespace ripkit {

// Modes ordered as the bare modes: qubits first, resonator last.
struct HybridizationData {
  Eigen::MatrixXd U;            // bare flux = U * normal flux
  Eigen::MatrixXd V;            // bare charge = V * normal charge
  Eigen::VectorXd omega_tilde;  // normal-mode harmonic frequencies
  Eigen::VectorXd omega_bar;    // bare harmonic frequencies used
};

Eigen::MatrixXd harmonic_flux_matrix(const DeviceSpec& device);
Eigen::MatrixXd harmonic_charge_matrix(const DeviceSpec& device);

HybridizationData bogoliubov(const DeviceSpec& device);

// Coefficients for two qubits (a, b) and the resonator (c). Mode index
// 0 = a, 1 = b, 2 = c. Time-dependent entries are stored as prefactors of
// their eta / Omega patterns.
struct QuarticCoefficients {
  Eigen::Vector3d omega_tilde;
  Eigen::Vector3d delta_S;      // static shifts
  Eigen::Vector3d delta_D;      // dynamic shift per photon |eta|^2
  Eigen::Vector3d alpha;        // self-Kerr
  Eigen::Matrix3d two_chi;      // cross-Kerr, symmetric, zero diagonal

  // lambda_k = drive*Omega + (eta + eta3*|eta|^2)*conj(eta), k = a, b
  Eigen::Vector2d lambda_drive;
  Eigen::Vector2d lambda_eta;
  Eigen::Vector2d lambda_eta3;

  // lambda_{k*l} = exch + exch2*|eta|^2, symmetric in (k, l)
  Eigen::Matrix3d exch;
  Eigen::Matrix3d exch2;

  // lambda_{k*kl} = nq(k, l)*conj(eta); nq(k, k) is lambda_{k*kk}
  Eigen::Matrix3d nq;

  Eigen::Vector3d dressed_omega() const { return omega_tilde + delta_S; }
  std::vector<std::string> warnings;
};

// `epsilon` and `omega_bar` for the two qubits; U, V are 3x3.
QuarticCoefficients quartic_coefficients(const Eigen::MatrixXd& U, const Eigen::MatrixXd& V,
                                         const Eigen::Vector3d& omega_tilde,
                                         const Eigen::Vector2d& epsilon,
                                         const Eigen::Vector2d& omega_bar);
QuarticCoefficients quartic_coefficients(const HybridizationData& hyb, const DeviceSpec& device);

struct DuffingParameters {
  double omega_c;  // dressed
  double alpha_c;
  double delta_Sc;
};
DuffingParameters duffing_parameters(const QuarticCoefficients& coeffs);

// One printed row of the coefficient table. `terms` maps a pattern such as
// "1", "Omega", "conj(eta)", "|eta|^2 conj(eta)" to its coefficient.
struct CoefficientRow {
  std::string name;
  std::vector<std::pair<std::string, double>> terms;
};
std::vector<CoefficientRow> coefficient_report(const QuarticCoefficients& coeffs);

}  // namespace ripkit
