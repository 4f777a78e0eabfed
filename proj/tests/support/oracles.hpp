#pragma once

// Independent reference integrators shared by the unit and acceptance suites.

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>
#include <complex>
#include <random>

#include "ripkit/toy_leakage.hpp"

namespace ripkit::oracle {

// Direct time-ordered propagation of i d/dt psi = H_I(t) psi for the three-level model.
inline Eigen::Matrix3cd three_level_propagator(const ThreeLevelSpec& spec, double tau) {
  using State = std::vector<std::complex<double>>;
  namespace ode = boost::numeric::odeint;
  Eigen::Matrix3cd u;
  for (int col = 0; col < 3; ++col) {
    State x(3, 0.0);
    x[col] = 1.0;
    auto rhs = [&](const State& s, State& ds, double t) {
      const Eigen::Matrix3cd h = spec.interaction(t);
      for (int i = 0; i < 3; ++i) {
        std::complex<double> acc = 0.0;
        for (int j = 0; j < 3; ++j) acc += h(i, j) * s[j];
        ds[i] = std::complex<double>(0, -1) * acc;
      }
    };
    ode::integrate_adaptive(ode::make_controlled<ode::runge_kutta_dopri5<State>>(1e-13, 1e-13), rhs, x, 0.0,
                            tau, tau / 2000);
    for (int i = 0; i < 3; ++i) u(i, col) = x[i];
  }
  return u;
}

// Haar-random unitary via QR of a complex Ginibre matrix.
inline Eigen::MatrixXcd random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> N;
  Eigen::MatrixXcd z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = {N(rng), N(rng)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
  return q;
}

}  // namespace ripkit::oracle
