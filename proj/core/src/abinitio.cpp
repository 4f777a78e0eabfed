// Approximate ab-initio rates from the quartic normal-mode Hamiltonian.
//
// Every coupling term of the displaced-frame quartic Hamiltonian is expanded
// into Fock-state matrix elements, amplitudes reaching the same intermediate
// state are summed coherently, and each intermediate state contributes one
// second-order kernel. This evaluates the same sums as the closed-form rate
// tables without transcribing them term by term.

#include <array>
#include <cmath>
#include <map>

#include "ripkit/effective_rates.hpp"
#include "ripkit/errors.hpp"
#include "ripkit/units.hpp"

namespace ripkit {

namespace {

using Fock = std::array<int, 3>;

double h0_energy(const QuarticCoefficients& q, const Fock& n) {
  const Eigen::Vector3d w = q.dressed_omega();
  double e = 0.0;
  for (int j = 0; j < 3; ++j) e += w(j) * n[j] + 0.5 * q.alpha(j) * n[j] * (n[j] - 1);
  for (int j = 0; j < 3; ++j)
    for (int k = j + 1; k < 3; ++k) e += q.two_chi(j, k) * n[j] * n[k];
  return e;
}

// One coupled intermediate state: amplitude samples and drive-phase sign.
struct Channel {
  std::vector<cplx> f;
  int s = 0;  // H_mn carries exp(i s w_d t)
};

class Couplings {
 public:
  Couplings(const Fock& n, std::size_t samples) : n_(n), samples_(samples) {}

  // Adds coeff[k] * element to the channel reaching n + delta.
  template <class Coeff>
  void add(const Fock& delta, double element, Coeff coeff) {
    if (element == 0.0) return;
    Fock m = n_;
    for (int j = 0; j < 3; ++j) {
      m[j] += delta[j];
      if (m[j] < 0) return;
    }
    auto& ch = channels_[m];
    if (ch.f.empty()) {
      ch.f.assign(samples_, 0.0);
      ch.s = -(delta[0] + delta[1] + delta[2]);
    }
    for (std::size_t k = 0; k < samples_; ++k) ch.f[k] += element * coeff(k);
  }

  const std::map<Fock, Channel>& channels() const { return channels_; }

 private:
  Fock n_;
  std::size_t samples_;
  std::map<Fock, Channel> channels_;
};

Fock unit(int j, int sign = 1) {
  Fock d{0, 0, 0};
  d[j] = sign;
  return d;
}

Fock pair_move(int up, int down) {
  Fock d{0, 0, 0};
  d[up] += 1;
  d[down] -= 1;
  return d;
}

// Builds all first-neighbour couplings of |n> for amplitude samples eta and
// drive samples omega_c.
Couplings build(const QuarticCoefficients& q, const Fock& n, const std::vector<cplx>& eta,
                const std::vector<cplx>& omega_c) {
  const std::size_t ns = eta.size();
  Couplings c(n, ns);
  auto sq = [](int x) { return std::sqrt(static_cast<double>(std::max(x, 0))); };

  // lambda_j exp(i w_d t) j + h.c., j = a, b
  for (int j = 0; j < 2; ++j) {
    auto lam = [&, j](std::size_t k) {
      return q.lambda_drive(j) * omega_c[k] +
             (q.lambda_eta(j) + q.lambda_eta3(j) * std::norm(eta[k])) * std::conj(eta[k]);
    };
    c.add(unit(j, -1), sq(n[j]), lam);
    c.add(unit(j, +1), sq(n[j] + 1), [&](std::size_t k) { return std::conj(lam(k)); });
  }
  // lambda_{j*k} j^dag k + h.c.
  for (auto [j, k] : {std::pair{0, 1}, {0, 2}, {1, 2}}) {
    auto lam = [&, j = j, k = k](std::size_t s) {
      return cplx(q.exch(j, k) + q.exch2(j, k) * std::norm(eta[s]), 0.0);
    };
    c.add(pair_move(j, k), sq(n[j] + 1) * sq(n[k]), lam);
    c.add(pair_move(k, j), sq(n[j]) * sq(n[k] + 1), lam);
  }
  // lambda_{j*jk} exp(i w_d t) n_j k + h.c.
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      const double v = q.nq(j, k);
      if (v == 0.0) continue;
      const int nj_after = n[j] - (j == k ? 1 : 0);
      c.add(unit(k, -1), sq(n[k]) * nj_after, [&, v](std::size_t s) { return v * std::conj(eta[s]); });
      c.add(unit(k, +1), n[j] * sq(n[k] + 1), [&, v](std::size_t s) { return v * eta[s]; });
    }
  }
  return c;
}

struct SecondOrder {
  std::vector<double> total;
  double max_ratio = 0.0;
};

SecondOrder second_order(const QuarticCoefficients& q, const Fock& n, double omega_d,
                         const std::vector<cplx>& eta, const std::vector<cplx>& omega_c, double dt,
                         const AbinitioOptions& opts) {
  SecondOrder out;
  out.total.assign(eta.size(), 0.0);
  const double en = h0_energy(q, n);
  const Couplings c = build(q, n, eta, omega_c);
  for (const auto& [m, ch] : c.channels()) {
    double fmax = 0.0;
    for (const cplx& x : ch.f) fmax = std::max(fmax, std::abs(x));
    if (fmax == 0.0) continue;
    cplx omega(h0_energy(q, m) - en + ch.s * omega_d, 0.0);
    if (opts.kappa_c && m[2] > 0) omega -= cplx(0.0, 0.5 * m[2] * *opts.kappa_c);
    if (opts.mode != ResponseMode::quadrature && std::abs(omega) < 0.01)
      throw PoleError("abinitio_rates: vanishing operator-valued detuning");
    out.max_ratio = std::max(out.max_ratio, fmax / std::abs(omega));
    const std::vector<double> e = response_kernel(ch.f, {}, dt, omega, opts.mode, true);
    for (std::size_t k = 0; k < e.size(); ++k) out.total[k] += e[k];
  }
  return out;
}

// Drive amplitude consistent with the trajectory: inverts the Duffing equation.
std::vector<cplx> drive_from_trajectory(const ResonatorTrajectory& tr, double delta_cd, double alpha_c) {
  std::vector<cplx> om(tr.size());
  const cplx i(0.0, 1.0);
  for (std::size_t k = 0; k < tr.size(); ++k) {
    const cplx eta = tr.eta[k];
    const cplx deta = k < tr.eta_dot.size() ? tr.eta_dot[k] : cplx(0.0);
    om[k] = 2.0 * i * deta / kRadPerNsPerMHz - 2.0 * (delta_cd + alpha_c * std::norm(eta)) * eta;
  }
  return om;
}

}  // namespace

StateEnergy abinitio_state_energy(const QuarticCoefficients& q, double delta_cd, const ResonatorTrajectory& tr,
                                  const Occupation& occ, const AbinitioOptions& opts) {
  if (occ.size() != 3) throw ConfigError("abinitio_state_energy: occupation (n_a, n_b, n_c) required");
  const Fock n{occ[0], occ[1], occ[2]};
  const double omega_d = q.dressed_omega()(2) - delta_cd;
  const std::vector<cplx> om = drive_from_trajectory(tr, delta_cd, opts.alpha_c.value_or(tr.alpha_c));

  StateEnergy e;
  e.first.resize(tr.size());
  for (std::size_t k = 0; k < tr.size(); ++k) {
    const double ph = std::norm(tr.eta[k]);
    e.first[k] = ph * (q.delta_D(0) * n[0] + q.delta_D(1) * n[1] + q.delta_D(2) * n[2]);
  }
  const double dt = tr.size() > 1 ? tr.dt : 1.0;
  const SecondOrder dyn = second_order(q, n, omega_d, tr.eta, om, dt, opts);
  const std::vector<cplx> zero(1, 0.0);
  AbinitioOptions stat = opts;
  stat.mode = ResponseMode::adiabatic1;
  e.second_static = second_order(q, n, omega_d, zero, zero, 1.0, stat).total[0];
  e.second = dyn.total;
  e.coupling_ratio = dyn.max_ratio;
  for (double& x : e.second) x -= e.second_static;
  return e;
}

EffectiveRates abinitio_rates(const QuarticCoefficients& q, double delta_cd, const ResonatorTrajectory& tr,
                              const AbinitioOptions& opts) {
  constexpr int states[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  EffectiveRates r;
  r.model = RateModel::abinitio;
  r.t.resize(tr.size());
  for (std::size_t k = 0; k < tr.size(); ++k) r.t[k] = tr.t(k);
  std::array<std::vector<double>, 4> e1, e2;
  std::array<double, 4> es{};
  double max_ratio = 0.0;
  for (int s = 0; s < 4; ++s) {
    StateEnergy e = abinitio_state_energy(q, delta_cd, tr, {states[s][0], states[s][1], 0}, opts);
    e1[s] = std::move(e.first);
    e2[s] = std::move(e.second);
    es[s] = e.second_static;
    max_ratio = std::max(max_ratio, e.coupling_ratio);
  }
  const std::size_t n = tr.size();
  for (auto* ser : {&r.first, &r.second}) {
    ser->iz.resize(n);
    ser->zi.resize(n);
    ser->zz.resize(n);
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Projection p1 = project(e1[0][k], e1[1][k], e1[2][k], e1[3][k]);
    const Projection p2 = project(e2[0][k], e2[1][k], e2[2][k], e2[3][k]);
    r.first.iz[k] = p1.iz;
    r.first.zi[k] = p1.zi;
    r.first.zz[k] = p1.zz;
    r.second.iz[k] = p2.iz;
    r.second.zi[k] = p2.zi;
    r.second.zz[k] = p2.zz;
  }
  const Projection ps = project(es[0], es[1], es[2], es[3]);
  r.static_iz = ps.iz;
  r.static_zi = ps.zi;
  // chi_ab n_a n_b of the Kerr part projects to chi_ab on ZZ/2
  r.static_zz = ps.zz + 0.5 * q.two_chi(0, 1);
  if (max_ratio >= 1.0)
    r.warnings.push_back("abinitio_rates: |lambda / Delta| >= 1 for at least one coupled pair");
  r.warnings.insert(r.warnings.end(), q.warnings.begin(), q.warnings.end());
  return r;
}

}  // namespace ripkit
