#include "ripkit/device_model.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <unsupported/Eigen/NonLinearOptimization>

#include "ripkit/errors.hpp"
#include "ripkit/linalg.hpp"

namespace ripkit {

double TransmonSpec::omega_bar() const { return std::sqrt(8.0 * E_C * E_J); }
double TransmonSpec::epsilon() const { return std::sqrt(2.0 * E_C / E_J); }
double TransmonSpec::n_zpf() const { return std::pow(E_J / (32.0 * E_C), 0.25); }

void TransmonSpec::validate(double min_ratio) const {
  if (!(E_C > 0.0)) throw ConfigError("transmon: E_C must be positive");
  if (!(E_J > 0.0)) throw ConfigError("transmon: E_J must be positive");
  if (!(E_J / E_C > min_ratio))
    throw ConfigError("transmon: E_J/E_C = " + std::to_string(E_J / E_C) +
                      " outside the transmon regime");
  if (!std::isfinite(omega_bar()) || !std::isfinite(epsilon()))
    throw ConfigError("transmon: non-finite derived parameters");
}

void DeviceSpec::validate() const {
  if (transmons.empty() || transmons.size() > 2)
    throw ConfigError("device: one or two transmons required");
  if (g.size() != transmons.size()) throw ConfigError("device: one coupling per transmon required");
  if (!(omega_c > 0.0)) throw ConfigError("device: resonator frequency must be positive");
  for (const auto& t : transmons) t.validate();
  if (kappa_c && *kappa_c < 0.0) throw ConfigError("device: kappa_c must be non-negative");
}

std::vector<std::string> DeviceSpec::warnings() const {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < transmons.size(); ++j) {
    const double detuning = std::abs(transmons[j].omega_bar() - omega_c);
    if (std::abs(g[j]) >= detuning)
      out.push_back("coupling " + std::to_string(j) + " exceeds the qubit-resonator detuning");
  }
  return out;
}

void TruncationSpec::validate() const {
  if (n_charge < 20) throw ConfigError("truncation: n_charge must be at least 20");
  if (n_qubit_keep < 2 || n_qubit_keep > 2 * n_charge + 1)
    throw ConfigError("truncation: n_qubit_keep out of range");
  if (n_photon < 2) throw ConfigError("truncation: n_photon must be at least 2");
}

namespace {

Eigen::MatrixXd charge_hamiltonian(const TransmonSpec& spec, int n_charge) {
  const int d = 2 * n_charge + 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    const double n = k - n_charge - spec.n_g;
    h(k, k) = 4.0 * spec.E_C * n * n;
    if (k + 1 < d) h(k, k + 1) = h(k + 1, k) = -0.5 * spec.E_J;
  }
  return h;
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve_charge(const TransmonSpec& spec, int n_charge) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(charge_hamiltonian(spec, n_charge));
  if (es.info() != Eigen::Success) throw NumericalError("transmon: eigensolver failed");
  return es;
}

}  // namespace

TransmonSpectrum transmon_spectrum(const TransmonSpec& spec, const TruncationSpec& trunc,
                                   bool check_convergence) {
  spec.validate();
  trunc.validate();
  const int keep = trunc.n_qubit_keep;
  const auto es = solve_charge(spec, trunc.n_charge);
  const Eigen::VectorXd all = es.eigenvalues();

  if (check_convergence) {
    const auto wider = solve_charge(spec, trunc.n_charge + 5);
    const Eigen::VectorXd a = all.head(keep).array() - all(0);
    const Eigen::VectorXd b = wider.eigenvalues().head(keep).array() - wider.eigenvalues()(0);
    if ((a - b).cwiseAbs().maxCoeff() > 1e-3)
      throw ConvergenceError("transmon: spectrum not converged at n_charge = " +
                             std::to_string(trunc.n_charge));
  }

  TransmonSpectrum out;
  out.energies = all.head(keep).array() - all(0);
  out.vectors = es.eigenvectors().leftCols(keep);
  // Deterministic sign: largest component positive.
  for (int k = 0; k < keep; ++k) {
    Eigen::Index imax;
    out.vectors.col(k).cwiseAbs().maxCoeff(&imax);
    if (out.vectors(imax, k) < 0.0) out.vectors.col(k) *= -1.0;
  }
  const int d = 2 * trunc.n_charge + 1;
  Eigen::VectorXd n(d);
  for (int k = 0; k < d; ++k) n(k) = k - trunc.n_charge - spec.n_g;
  out.charge = out.vectors.transpose() * n.asDiagonal() * out.vectors;
  return out;
}

Asymptotics asymptotics(double E_C, double E_J) {
  if (!(E_C > 0.0) || !(E_J / E_C > 10.0))
    throw ConfigError("asymptotics: requires E_C > 0 and E_J/E_C > 10");
  const double eps = std::sqrt(2.0 * E_C / E_J);
  return {std::sqrt(8.0 * E_J * E_C) - E_C - 0.25 * eps * E_C, -E_C - 9.0 / 16.0 * eps * E_C};
}

// --- system operators ---

Eigen::Index SystemOperators::product_index(const Occupation& occ) const {
  if (occ.size() != dims.size()) throw ConfigError("occupation rank does not match the system");
  Eigen::Index idx = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (occ[k] < 0 || occ[k] >= dims[k]) throw ConfigError("occupation outside the truncation");
    idx = idx * dims[k] + occ[k];
  }
  return idx;
}

Occupation SystemOperators::occupation_of(Eigen::Index product) const {
  Occupation occ(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    occ[k] = static_cast<int>(product % dims[k]);
    product /= dims[k];
  }
  return occ;
}

namespace {
std::string format_occ(const Occupation& occ) {
  std::string s = "|";
  for (std::size_t k = 0; k < occ.size(); ++k) s += (k ? "," : "") + std::to_string(occ[k]);
  return s + ">";
}
}  // namespace

Eigen::Index SystemOperators::eigen_index(const Occupation& occ, double min_overlap) const {
  const Eigen::Index e = by_label[product_index(occ)];
  if (overlaps[e] < min_overlap) {
    std::string msg = "label loss for " + format_occ(occ) + ": overlap " + std::to_string(overlaps[e]);
    for (const auto& c : conflicts)
      if (c.label == occ)
        msg += " (claimed by states " + std::to_string(c.winner) + " at " +
               std::to_string(c.winner_overlap) + " and " + std::to_string(c.loser) + " at " +
               std::to_string(c.loser_overlap) + ")";
    throw LabelError(msg);
  }
  return e;
}

double SystemOperators::energy(const Occupation& occ, double min_overlap) const {
  return energies(eigen_index(occ, min_overlap));
}

double SystemOperators::overlap(const Occupation& occ) const {
  return overlaps[by_label[product_index(occ)]];
}

namespace {

void assign_labels(SystemOperators& sys) {
  const Eigen::Index n = sys.vectors.rows();
  struct Candidate {
    double p;
    Eigen::Index product;
    Eigen::Index eigen;
  };
  std::vector<Candidate> cand;
  cand.reserve(static_cast<std::size_t>(4 * n));
  std::vector<Eigen::Index> argmax(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double best = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double p = sys.vectors(i, j) * sys.vectors(i, j);
      if (p > best) {
        best = p;
        argmax[j] = i;
      }
      if (p >= 0.01) cand.push_back({p, i, j});
    }
  }
  std::stable_sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) {
    if (a.p != b.p) return a.p > b.p;
    if (a.eigen != b.eigen) return a.eigen < b.eigen;
    return a.product < b.product;
  });

  sys.by_label.assign(n, -1);
  std::vector<Eigen::Index> label_of(n, -1);
  for (const auto& c : cand) {
    if (label_of[c.eigen] >= 0 || sys.by_label[c.product] >= 0) continue;
    label_of[c.eigen] = c.product;
    sys.by_label[c.product] = c.eigen;
  }
  // Leftovers: strongly mixed states near the truncation edge.
  std::vector<Eigen::Index> free_products;
  for (Eigen::Index i = 0; i < n; ++i)
    if (sys.by_label[i] < 0) free_products.push_back(i);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (label_of[j] >= 0) continue;
    auto best = free_products.end();
    double bp = -1.0;
    for (auto it = free_products.begin(); it != free_products.end(); ++it) {
      const double p = sys.vectors(*it, j) * sys.vectors(*it, j);
      if (p > bp) {
        bp = p;
        best = it;
      }
    }
    label_of[j] = *best;
    sys.by_label[*best] = j;
    free_products.erase(best);
  }

  sys.labels.resize(n);
  sys.overlaps.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    sys.labels[j] = sys.occupation_of(label_of[j]);
    sys.overlaps[j] = sys.vectors(label_of[j], j) * sys.vectors(label_of[j], j);
    if (argmax[j] != label_of[j]) {
      const Eigen::Index winner = sys.by_label[argmax[j]];
      sys.conflicts.push_back({sys.occupation_of(argmax[j]), winner,
                               sys.vectors(argmax[j], winner) * sys.vectors(argmax[j], winner), j,
                               sys.vectors(argmax[j], j) * sys.vectors(argmax[j], j)});
    }
  }
}

}  // namespace

SystemOperators assemble_system(const DeviceSpec& device, const TruncationSpec& trunc) {
  device.validate();
  trunc.validate();
  SystemOperators sys;
  sys.device = device;
  sys.trunc = trunc;
  sys.warnings = device.warnings();

  const std::size_t nq = device.n_qubits();
  std::vector<TransmonSpectrum> spectra;
  for (const auto& t : device.transmons) spectra.push_back(transmon_spectrum(t, trunc));
  for (std::size_t j = 0; j < nq; ++j) sys.dims.push_back(trunc.n_qubit_keep);
  sys.dims.push_back(trunc.n_photon);

  const int np = trunc.n_photon;
  Eigen::MatrixXd yc = Eigen::MatrixXd::Zero(np, np);
  for (int n = 1; n < np; ++n) yc(n - 1, n) = yc(n, n - 1) = std::sqrt(static_cast<double>(n));

  auto kron = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j)
        out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
  };
  auto eye = [](Eigen::Index n) { return Eigen::MatrixXd::Identity(n, n); };

  std::vector<Eigen::MatrixXd> hq, yq;
  for (std::size_t j = 0; j < nq; ++j) {
    hq.push_back(spectra[j].energies.asDiagonal());
    yq.push_back(spectra[j].charge / device.transmons[j].n_zpf());
  }
  Eigen::VectorXd photon_energy(np);
  for (int n = 0; n < np; ++n) photon_energy(n) = device.omega_c * n;
  const Eigen::MatrixXd hc = photon_energy.asDiagonal();
  const Eigen::Index kq = trunc.n_qubit_keep;

  if (nq == 1) {
    sys.H = kron(hq[0], eye(np)) + kron(eye(kq), hc) + device.g[0] * kron(yq[0], yc);
    sys.Y_c = kron(eye(kq), yc).sparseView();
  } else {
    const Eigen::MatrixXd iq = eye(kq);
    sys.H = kron(kron(hq[0], iq), eye(np)) + kron(kron(iq, hq[1]), eye(np)) +
            kron(kron(iq, iq), hc) + device.g[0] * kron(kron(yq[0], iq), yc) +
            device.g[1] * kron(kron(iq, yq[1]), yc);
    sys.Y_c = kron(kron(iq, iq), yc).sparseView();
  }

  auto eig = sym_eig(sys.H);
  sys.energies = eig.values.array() - eig.values(0);
  sys.vectors = std::move(eig.vectors);
  for (Eigen::Index j = 0; j < sys.vectors.cols(); ++j) {
    Eigen::Index imax;
    sys.vectors.col(j).cwiseAbs().maxCoeff(&imax);
    if (sys.vectors(imax, j) < 0.0) sys.vectors.col(j) *= -1.0;
  }
  assign_labels(sys);
  return sys;
}

std::vector<double> dispersive_shift_exact(const SystemOperators& sys) {
  const std::size_t nq = sys.device.n_qubits();
  std::vector<double> out;
  for (std::size_t j = 0; j < nq; ++j) {
    Occupation o00(nq + 1, 0), o10 = o00, o01 = o00, o11 = o00;
    o10[j] = 1;
    o01[nq] = 1;
    o11[j] = 1;
    o11[nq] = 1;
    out.push_back(sys.energy(o11) - sys.energy(o10) - sys.energy(o01) + sys.energy(o00));
  }
  return out;
}

double static_zz_exact(const SystemOperators& sys) {
  if (sys.device.n_qubits() != 2) throw ConfigError("static_zz_exact: two qubits required");
  return sys.energy({1, 1, 0}) - sys.energy({1, 0, 0}) - sys.energy({0, 1, 0}) +
         sys.energy({0, 0, 0});
}

DressedSpectrum dressed_spectrum(const SystemOperators& sys) {
  const std::size_t nq = sys.device.n_qubits();
  DressedSpectrum out;
  const Occupation vac(nq + 1, 0);
  const double e0 = sys.energy(vac);
  Occupation c1 = vac;
  c1[nq] = 1;
  out.omega_c = sys.energy(c1) - e0;
  out.two_chi = dispersive_shift_exact(sys);
  for (std::size_t j = 0; j < nq; ++j) {
    Occupation o1 = vac, o2 = vac;
    o1[j] = 1;
    o2[j] = 2;
    const double e1 = sys.energy(o1);
    out.omega.push_back(e1 - e0);
    out.alpha.push_back(sys.energy(o2) - 2.0 * e1 + e0);
  }
  return out;
}

// --- inversion ---

namespace {

TransmonSpec invert_asymptotic(double omega01, double alpha, double n_g) {
  if (!(alpha < 0.0) || !(omega01 > 0.0))
    throw ConfigError("invert: requires omega01 > 0 and alpha < 0");
  const double target = omega01 / alpha;
  auto ratio_of = [](double r) {
    const double s = std::sqrt(2.0 / r);
    return -(std::sqrt(8.0 * r) - 1.0 - 0.25 * s) / (1.0 + 9.0 / 16.0 * s);
  };
  auto f = [&](double log_r) { return ratio_of(std::exp(log_r)) - target; };
  const double lo = std::log(10.0), hi = std::log(1e4);
  if (f(lo) * f(hi) > 0.0) throw NumericalError("invert: no solution with E_J/E_C in [10, 1e4]");
  boost::uintmax_t iters = 200;
  const auto br = boost::math::tools::toms748_solve(
      f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
  const double r = std::exp(0.5 * (br.first + br.second));
  const double E_C = -alpha / (1.0 + 9.0 / 16.0 * std::sqrt(2.0 / r));
  return {E_C, r * E_C, n_g};
}

template <typename F>
struct Residual {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  F f;
  int n;
  int inputs() const { return n; }
  int values() const { return n; }
  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& r) const {
    r = f(x);
    return 0;
  }
};

template <typename F>
Eigen::VectorXd hybrid_solve(F f, Eigen::VectorXd x, int* evaluations) {
  Residual<F> functor{f, static_cast<int>(x.size())};
  Eigen::HybridNonLinearSolver<Residual<F>> solver(functor);
  solver.parameters.xtol = 1e-13;
  solver.parameters.maxfev = 400 * static_cast<int>(x.size());
  solver.hybrd1(x, 1e-13);
  if (evaluations) *evaluations += static_cast<int>(solver.nfev);
  return x;
}

void guard_ratio(const Eigen::VectorXd& x, int q) {
  for (int j = 0; j < q; ++j) {
    const double r = x(2 * j + 1) / x(2 * j);
    if (!(x(2 * j) > 0.0) || !(r >= 10.0 && r <= 1e4))
      throw NumericalError("invert: root-finder left E_J/E_C in [10, 1e4]");
  }
}

}  // namespace

TransmonSpec invert_transmon(double omega01, double alpha, double n_g, InversionObjective objective) {
  TransmonSpec seed = invert_asymptotic(omega01, alpha, n_g);
  if (objective == InversionObjective::asymptotic) return seed;
  const TruncationSpec trunc{30, 3, 2};
  auto f = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd r(2);
    if (!(x(0) > 0.0) || !(x(1) / x(0) > 10.0)) {
      r.setConstant(1e6);
      return r;
    }
    const auto s = transmon_spectrum({x(0), x(1), n_g}, trunc, false);
    r(0) = s.energies(1) - omega01;
    r(1) = s.energies(2) - 2.0 * s.energies(1) - alpha;
    return r;
  };
  Eigen::VectorXd x(2);
  x << seed.E_C, seed.E_J;
  x = hybrid_solve(f, x, nullptr);
  guard_ratio(x, 1);
  const Eigen::VectorXd r = f(x);
  if (std::abs(r(0)) > 1e-3 || std::abs(r(1)) > 1e-2)
    throw NumericalError("invert: exact inversion did not converge");
  return {x(0), x(1), n_g};
}

double dispersive_coupling_estimate(double two_chi, double omega_bar_q, double alpha, double omega_c) {
  const double delta = omega_bar_q - omega_c;
  const double g2 = 0.5 * two_chi * delta * (delta + alpha) / alpha;
  if (!(g2 > 0.0)) throw NumericalError("dispersive estimate: target 2chi has the wrong sign");
  return std::sqrt(g2);
}

InversionResult invert_parameters(const InversionTargets& targets, const TruncationSpec& trunc,
                                  const std::optional<DeviceSpec>& seed) {
  const int q = static_cast<int>(targets.qubits.size());
  if (q < 1 || q > 2) throw ConfigError("invert: one or two qubits required");
  auto ng = [&](int j) { return j < static_cast<int>(targets.n_g.size()) ? targets.n_g[j] : 0.0; };
  bool coupled = false;
  for (const auto& t : targets.qubits) coupled = coupled || t.two_chi.has_value();

  InversionResult out;
  if (!coupled) {
    for (int j = 0; j < q; ++j)
      out.device.transmons.push_back(
          invert_transmon(targets.qubits[j].omega01, targets.qubits[j].alpha, ng(j)));
    return out;
  }
  for (const auto& t : targets.qubits)
    if (!t.two_chi) throw ConfigError("invert: 2chi must be targeted for every qubit or none");
  if (!targets.omega_c) throw ConfigError("invert: coupled inversion needs a resonator target");
  if (trunc.n_qubit_keep < 3) throw ConfigError("invert: need at least three transmon levels");

  // Unknowns: (E_C, E_J) per qubit, g per qubit, bare resonator frequency.
  const int n = 3 * q + 1;
  Eigen::VectorXd x(n);
  if (seed) {
    for (int j = 0; j < q; ++j) {
      x(2 * j) = seed->transmons[j].E_C;
      x(2 * j + 1) = seed->transmons[j].E_J;
      x(2 * q + j) = seed->g[j];
    }
    x(n - 1) = seed->omega_c;
  } else {
    for (int j = 0; j < q; ++j) {
      const auto& t = targets.qubits[j];
      const TransmonSpec s = invert_asymptotic(t.omega01, t.alpha, ng(j));
      x(2 * j) = s.E_C;
      x(2 * j + 1) = s.E_J;
      x(2 * q + j) = dispersive_coupling_estimate(*t.two_chi, s.omega_bar(), t.alpha, *targets.omega_c);
    }
    x(n - 1) = *targets.omega_c;
  }

  auto build = [&](const Eigen::VectorXd& v) {
    DeviceSpec d;
    for (int j = 0; j < q; ++j) {
      d.transmons.push_back({v(2 * j), v(2 * j + 1), ng(j)});
      d.g.push_back(v(2 * q + j));
    }
    d.omega_c = v(n - 1);
    return d;
  };
  // 2chi residuals are weighted so MHz-scale frequency errors do not dominate.
  constexpr double kChiWeight = 100.0;
  auto f = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd r(n);
    for (int j = 0; j < q; ++j)
      if (!(v(2 * j) > 0.0) || !(v(2 * j + 1) / v(2 * j) > 10.0) || !(v(2 * q + j) > 0.0)) {
        r.setConstant(1e6);
        return r;
      }
    const auto sys = assemble_system(build(v), trunc);
    const auto ds = dressed_spectrum(sys);
    for (int j = 0; j < q; ++j) {
      r(2 * j) = ds.omega[j] - targets.qubits[j].omega01;
      r(2 * j + 1) = ds.alpha[j] - targets.qubits[j].alpha;
      r(2 * q + j) = kChiWeight * (ds.two_chi[j] - *targets.qubits[j].two_chi);
    }
    r(n - 1) = ds.omega_c - *targets.omega_c;
    return r;
  };
  x = hybrid_solve(f, x, &out.evaluations);
  guard_ratio(x, q);
  const Eigen::VectorXd r = f(x);
  out.max_residual = 0.0;
  for (int j = 0; j < q; ++j) {
    out.max_residual = std::max({out.max_residual, std::abs(r(2 * j)), std::abs(r(2 * j + 1)),
                                 std::abs(r(2 * q + j)) / kChiWeight});
  }
  out.max_residual = std::max(out.max_residual, std::abs(r(n - 1)));
  if (out.max_residual > 1e-3) throw NumericalError("invert: coupled inversion did not converge");
  out.device = build(x);
  return out;
}

std::uint64_t content_hash(const DeviceSpec& device, const TruncationSpec& trunc) {
  std::string s;
  char buf[64];
  auto add = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g;", v);
    s += buf;
  };
  for (const auto& t : device.transmons) {
    add(t.E_C);
    add(t.E_J);
    add(t.n_g);
  }
  for (double g : device.g) add(g);
  add(device.omega_c);
  add(device.kappa_c.value_or(-1.0));
  add(trunc.n_charge);
  add(trunc.n_qubit_keep);
  add(trunc.n_photon);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace ripkit
