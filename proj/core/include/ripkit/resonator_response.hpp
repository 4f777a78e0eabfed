#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ripkit/pulses.hpp"

namespace ripkit {

using cplx = std::complex<double>;

// Slowly varying resonator amplitude on a uniform grid. Between samples the
// amplitude is cubic Hermite interpolated from (eta, eta_dot).
struct ResonatorTrajectory {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<cplx> eta;
  std::vector<cplx> eta_dot;  // 1/ns
  double detuning = 0.0;      // Delta_cd used for free evolution outside the grid, MHz
  double alpha_c = 0.0;
  double pulse_end = 0.0;     // residual is read here

  std::size_t size() const { return eta.size(); }
  double t(std::size_t k) const { return t0 + dt * static_cast<double>(k); }
  double t_end() const { return t(size() - 1); }
  cplx at(double t) const;
  cplx derivative_at(double t) const;
  double photons(double t) const { return std::norm(at(t)); }
  double peak_photons() const;
  // |eta(pulse_end)|^2
  double residual() const;

  // Constant amplitude over [t0, t1]; useful for adiabatic rate evaluation.
  static ResonatorTrajectory constant(cplx eta, double t0, double t1, double dt = 0.5);
};

struct DuffingOptions {
  std::optional<double> t_end;  // defaults to the pulse end
  std::optional<double> dt;     // sample spacing; defaults to 40 samples per detuning period, <= 0.25 ns
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
};

// eta' + i Delta eta + i alpha |eta|^2 eta = -(i/2) Omega_c(t), cold start at the pulse start.
ResonatorTrajectory duffing_response(double delta_cd, double alpha_c, const Pulse& pulse,
                                     const DuffingOptions& opts = {});

// Closed form for an untruncated Gaussian drive Omega exp(-(t - t_G)^2 / 2 sigma^2)
// switched on at t = 0 with eta(0) = 0.
cplx gaussian_linear_analytic(double delta_cd, double omega_c, double sigma, double t_g, double t);

// Residual-to-peak photon ratio for the Gaussian drive, theta = Delta sigma and
// theta_G = Delta t_G in radians. Valid for theta_G >> theta > 0.
double leakage_measure(double theta, double theta_g);

struct SteadyState {
  cplx exact;
  cplx approx;
  bool bistable = false;
};
SteadyState steady_state(double delta_cd, double alpha_c, double omega_c);

}  // namespace ripkit
