#include "ripkit/normal_modes.hpp"

#include <cmath>

#include "ripkit/errors.hpp"

namespace ripkit {

Eigen::MatrixXd harmonic_flux_matrix(const DeviceSpec& device) {
  const auto nq = static_cast<Eigen::Index>(device.n_qubits());
  Eigen::VectorXd w(nq + 1);
  for (Eigen::Index j = 0; j < nq; ++j) w(j) = device.transmons[j].omega_bar();
  w(nq) = device.omega_c;
  return w.asDiagonal();
}

Eigen::MatrixXd harmonic_charge_matrix(const DeviceSpec& device) {
  const auto nq = static_cast<Eigen::Index>(device.n_qubits());
  Eigen::MatrixXd h = harmonic_flux_matrix(device);
  for (Eigen::Index j = 0; j < nq; ++j) h(j, nq) = h(nq, j) = 2.0 * device.g[j];
  return h;
}

HybridizationData bogoliubov(const DeviceSpec& device) {
  device.validate();
  const Eigen::MatrixXd hx = harmonic_flux_matrix(device);
  const Eigen::MatrixXd hy = harmonic_charge_matrix(device);
  const Eigen::Index n = hx.rows();
  const Eigen::VectorXd wbar = hx.diagonal();

  const double wp = std::exp(wbar.array().log().mean());
  const Eigen::VectorXd sx = (wp / wbar.array()).sqrt();
  const Eigen::MatrixXd hyp = sx.cwiseInverse().asDiagonal() * hy * sx.cwiseInverse().asDiagonal();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hyp);
  if (es.info() != Eigen::Success) throw NumericalError("bogoliubov: eigensolver failed");
  const Eigen::MatrixXd o_raw = es.eigenvectors();
  const Eigen::VectorXd w2_raw = es.eigenvalues();

  // Column k of the result belongs to bare mode k: greedy max overlap.
  std::vector<bool> used(n, false);
  std::vector<Eigen::Index> perm(n, -1);
  for (Eigen::Index step = 0; step < n; ++step) {
    double best = -1.0;
    Eigen::Index bj = -1, bk = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (perm[j] >= 0) continue;
      for (Eigen::Index k = 0; k < n; ++k) {
        if (used[k]) continue;
        if (std::abs(o_raw(j, k)) > best) {
          best = std::abs(o_raw(j, k));
          bj = j;
          bk = k;
        }
      }
    }
    perm[bj] = bk;
    used[bk] = true;
  }
  Eigen::MatrixXd o(n, n);
  Eigen::VectorXd w2(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    o.col(j) = o_raw.col(perm[j]);
    w2(j) = w2_raw(perm[j]);
    if (o(j, j) < 0.0) o.col(j) *= -1.0;
  }
  if ((w2.array() <= 0.0).any())
    throw NumericalError("bogoliubov: non-positive normal-mode eigenvalue (ultra-strong coupling)");

  const Eigen::VectorXd s = (w2.array() / wp).pow(0.25);
  HybridizationData out;
  out.U = sx.asDiagonal() * o * s.asDiagonal();
  out.V = sx.cwiseInverse().asDiagonal() * o * s.cwiseInverse().asDiagonal();
  out.omega_tilde = (wp * w2.array()).sqrt();
  out.omega_bar = wbar;
  return out;
}

QuarticCoefficients quartic_coefficients(const Eigen::MatrixXd& U, const Eigen::MatrixXd& V,
                                         const Eigen::Vector3d& omega_tilde,
                                         const Eigen::Vector2d& epsilon,
                                         const Eigen::Vector2d& omega_bar) {
  if (U.rows() != 3 || U.cols() != 3 || V.rows() != 3 || V.cols() != 3)
    throw ConfigError("quartic_coefficients: 3x3 hybridization matrices required");
  constexpr int c = 2;
  const Eigen::Vector2d e = epsilon.cwiseProduct(omega_bar);
  Eigen::Vector2d R;
  for (int j = 0; j < 2; ++j) R(j) = U.row(j).squaredNorm();
  auto u = [&](int j, int k) { return U(j, k); };

  QuarticCoefficients q;
  q.omega_tilde = omega_tilde;
  q.delta_S.setZero();
  q.delta_D.setZero();
  q.alpha.setZero();
  q.two_chi.setZero();
  q.exch.setZero();
  q.exch2.setZero();
  q.nq.setZero();
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 3; ++k) {
      const double uk2 = u(j, k) * u(j, k);
      q.alpha(k) += -0.25 * e(j) * uk2 * uk2;
      q.delta_S(k) += -0.25 * e(j) * uk2 * R(j);
      q.delta_D(k) += -0.5 * e(j) * uk2 * u(j, c) * u(j, c);
      q.nq(k, k) += -0.25 * e(j) * uk2 * u(j, k) * u(j, c);
      for (int l = 0; l < 3; ++l) {
        if (l == k) continue;
        q.two_chi(k, l) += -0.5 * e(j) * uk2 * u(j, l) * u(j, l);
        q.exch(k, l) += -0.25 * e(j) * u(j, k) * u(j, l) * R(j);
        q.exch2(k, l) += -0.5 * e(j) * u(j, k) * u(j, l) * u(j, c) * u(j, c);
        q.nq(k, l) += -0.5 * e(j) * uk2 * u(j, l) * u(j, c);
      }
    }
  }
  for (int k = 0; k < 2; ++k) {
    q.lambda_drive(k) = 0.5 * V(c, k);
    q.lambda_eta(k) = 0.0;
    q.lambda_eta3(k) = 0.0;
    for (int j = 0; j < 2; ++j) {
      q.lambda_eta(k) += -0.25 * e(j) * u(j, k) * u(j, c) * R(j);
      q.lambda_eta3(k) += -0.25 * e(j) * u(j, k) * std::pow(u(j, c), 3);
    }
  }
  if (std::abs(q.alpha(c)) > 0.1 * std::min(std::abs(q.alpha(0)), std::abs(q.alpha(1))))
    q.warnings.push_back("resonator self-Kerr is not small compared to the qubit anharmonicities");
  return q;
}

QuarticCoefficients quartic_coefficients(const HybridizationData& hyb, const DeviceSpec& device) {
  if (device.n_qubits() != 2) throw ConfigError("quartic_coefficients: two-qubit device required");
  Eigen::Vector2d eps, wbar;
  for (int j = 0; j < 2; ++j) {
    eps(j) = device.transmons[j].epsilon();
    wbar(j) = device.transmons[j].omega_bar();
  }
  return quartic_coefficients(hyb.U, hyb.V, hyb.omega_tilde, eps, wbar);
}

DuffingParameters duffing_parameters(const QuarticCoefficients& coeffs) {
  return {coeffs.omega_tilde(2) + coeffs.delta_S(2), coeffs.alpha(2), coeffs.delta_S(2)};
}

std::vector<CoefficientRow> coefficient_report(const QuarticCoefficients& q) {
  const char* m = "abc";
  auto nm = [&](const std::string& base, std::initializer_list<int> idx) {
    std::string s = base + "_";
    for (int i : idx) s += m[i];
    return s;
  };
  std::vector<CoefficientRow> rows;
  for (int k = 0; k < 3; ++k) rows.push_back({nm("delta_S", {k}), {{"1", q.delta_S(k)}}});
  for (int k = 0; k < 3; ++k) rows.push_back({nm("delta_D", {k}), {{"|eta|^2", q.delta_D(k)}}});
  for (int k = 0; k < 3; ++k) rows.push_back({nm("alpha", {k}), {{"1", q.alpha(k)}}});
  rows.push_back({"2chi_ab", {{"1", q.two_chi(0, 1)}}});
  rows.push_back({"2chi_ac", {{"1", q.two_chi(0, 2)}}});
  rows.push_back({"2chi_bc", {{"1", q.two_chi(1, 2)}}});
  for (int k = 0; k < 2; ++k)
    rows.push_back({nm("lambda", {k}),
                    {{"Omega", q.lambda_drive(k)},
                     {"conj(eta)", q.lambda_eta(k)},
                     {"|eta|^2 conj(eta)", q.lambda_eta3(k)}}});
  for (auto [k, l] : {std::pair{0, 1}, {0, 2}, {1, 2}})
    rows.push_back({std::string("lambda_") + m[k] + "*" + m[l],
                    {{"1", q.exch(k, l)}, {"|eta|^2", q.exch2(k, l)}}});
  for (int k = 0; k < 3; ++k)
    rows.push_back({std::string("lambda_") + m[k] + "*" + m[k] + m[k], {{"conj(eta)", q.nq(k, k)}}});
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l)
      if (k != l)
        rows.push_back({std::string("lambda_") + m[k] + "*" + m[k] + m[l], {{"conj(eta)", q.nq(k, l)}}});
  return rows;
}

}  // namespace ripkit
