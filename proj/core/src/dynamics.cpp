#include "ripkit/dynamics.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>

#include "ripkit/errors.hpp"
#include "ripkit/units.hpp"

namespace ripkit {

namespace {

using cplx = std::complex<double>;
using State = std::vector<cplx>;

// Y_c in the eigenbasis, compressed row storage.
struct DriveOperator {
  std::vector<int> row_start, col;
  std::vector<double> val;
  Eigen::VectorXd energy_rad;  // rad/ns
};

DriveOperator prepare(const SystemOperators& sys, double sparsity) {
  const Eigen::MatrixXd y = sys.vectors.transpose() * (sys.Y_c * sys.vectors);
  const double cut = sparsity * y.cwiseAbs().maxCoeff();
  DriveOperator d;
  const auto n = y.rows();
  d.row_start.reserve(n + 1);
  d.row_start.push_back(0);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      if (std::abs(y(r, c)) > cut) {
        d.col.push_back(static_cast<int>(c));
        d.val.push_back(y(r, c));
      }
    }
    d.row_start.push_back(static_cast<int>(d.col.size()));
  }
  d.energy_rad = kRadPerNsPerMHz * sys.energies;
  return d;
}

// Interaction picture with respect to the dressed energies:
// i c_m' = d(t) sum_n Y_mn exp(i (E_m - E_n) t) c_n.
struct Rhs {
  const DriveOperator* op;
  const Pulse* pulse;
  std::size_t* count;
  mutable State phase, v;

  void operator()(const State& c, State& dc, double t) const {
    ++*count;
    const double drive = kRadPerNsPerMHz * pulse->lab_drive(t);
    const std::size_t n = c.size();
    if (drive == 0.0) {
      std::fill(dc.begin(), dc.end(), cplx(0.0));
      return;
    }
    phase.resize(n);
    v.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
      const double a = op->energy_rad(static_cast<Eigen::Index>(m)) * t;
      phase[m] = cplx(std::cos(a), std::sin(a));
      v[m] = std::conj(phase[m]) * c[m];
    }
    for (std::size_t m = 0; m < n; ++m) {
      cplx acc = 0.0;
      for (int k = op->row_start[m]; k < op->row_start[m + 1]; ++k) acc += op->val[k] * v[op->col[k]];
      dc[m] = cplx(0.0, -drive) * phase[m] * acc;
    }
  }
};

Eigen::VectorXcd to_schroedinger(const State& c, const DriveOperator& op, double t) {
  Eigen::VectorXcd psi(static_cast<Eigen::Index>(c.size()));
  for (Eigen::Index m = 0; m < psi.size(); ++m)
    psi(m) = std::polar(1.0, -op.energy_rad(m) * t) * c[static_cast<std::size_t>(m)];
  return psi;
}

double top_photon_population(const SystemOperators& sys, const Eigen::VectorXcd& psi) {
  const Eigen::VectorXcd prod = sys.vectors.cast<cplx>() * psi;
  const int nph = sys.dims.back();
  double p = 0.0;
  for (Eigen::Index k = 0; k < prod.size(); ++k) {
    if (sys.occupation_of(k).back() == nph - 1) p += std::norm(prod(k));
  }
  return p;
}

EvolutionResult run(const SystemOperators& sys, const Pulse& pulse, const DriveOperator& op,
                    const Eigen::VectorXcd& psi0, const EvolveOptions& opts) {
  namespace ode = boost::numeric::odeint;
  if (psi0.size() != sys.dimension()) throw ConfigError("evolve: initial state has the wrong dimension");
  if (std::abs(psi0.norm() - 1.0) > 1e-12) throw ConfigError("evolve: initial state is not normalized");
  if (pulse.spec().omega_d <= 0.0) throw ConfigError("evolve: drive carrier must be set");

  const auto wall0 = std::chrono::steady_clock::now();
  EvolutionResult res;
  res.t_start = pulse.start();
  res.t_end = opts.t_end.value_or(pulse.end());
  if (res.t_end < res.t_start) throw ConfigError("evolve: horizon ends before the pulse starts");
  res.initial = psi0;

  State c(static_cast<std::size_t>(psi0.size()));
  // Interaction-picture amplitudes at t_start.
  for (Eigen::Index m = 0; m < psi0.size(); ++m)
    c[static_cast<std::size_t>(m)] = std::polar(1.0, op.energy_rad(m) * res.t_start) * psi0(m);

  std::size_t count = 0;
  Rhs rhs{&op, &pulse, &count, {}, {}};
  auto stepper = ode::make_controlled<ode::runge_kutta_fehlberg78<State>>(opts.abs_tol, opts.rel_tol);

  auto record = [&](const State& x, double t) {
    const Eigen::VectorXcd psi = to_schroedinger(x, op, t);
    res.norm_drift = std::max(res.norm_drift, std::abs(psi.norm() - 1.0));
    if (opts.samples > 0) {
      res.sample_t.push_back(t);
      res.samples.push_back(psi);
    }
  };

  // First carrier period sets the initial step.
  const double dt0 = std::min(0.01, 0.05 / std::max(rad_per_ns(pulse.spec().omega_d), 1e-6));
  try {
    if (opts.samples > 1 && res.t_end > res.t_start) {
      std::vector<double> times(opts.samples);
      for (std::size_t k = 0; k < opts.samples; ++k)
        times[k] = res.t_start + (res.t_end - res.t_start) * static_cast<double>(k) /
                                     static_cast<double>(opts.samples - 1);
      ode::integrate_times(stepper, std::ref(rhs), c, times.begin(), times.end(), dt0, record);
    } else if (res.t_end > res.t_start) {
      ode::integrate_adaptive(stepper, std::ref(rhs), c, res.t_start, res.t_end, dt0);
    }
  } catch (const ode::step_adjustment_error& e) {
    throw NumericalError(std::string("evolve: step size control failed: ") + e.what());
  }

  res.final_state = to_schroedinger(c, op, res.t_end);
  res.norm_drift = std::max(res.norm_drift, std::abs(res.final_state.norm() - 1.0));
  res.rhs_evaluations = count;
  res.top_photon = top_photon_population(sys, res.final_state);
  for (const auto& s : res.samples) res.top_photon = std::max(res.top_photon, top_photon_population(sys, s));
  if (res.top_photon > opts.truncation_warn)
    res.warnings.push_back("evolve: highest retained photon state population " + std::to_string(res.top_photon));
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
  if (res.norm_drift > opts.norm_tolerance) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "evolve: norm drift %.3e exceeds tolerance %.1e", res.norm_drift, opts.norm_tolerance);
    throw NumericalError(msg);
  }
  return res;
}

bool computational(const Occupation& occ) {
  for (std::size_t j = 0; j + 1 < occ.size(); ++j)
    if (occ[j] > 1) return false;
  return true;
}

}  // namespace

Eigen::VectorXcd labeled_state(const SystemOperators& sys, const Occupation& label) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(sys.dimension());
  v(sys.eigen_index(label)) = 1.0;
  return v;
}

EvolutionResult evolve(const SystemOperators& sys, const PulseSpec& pulse, const Eigen::VectorXcd& psi0,
                       const EvolveOptions& opts) {
  return evolve(sys, pulse, std::vector<Eigen::VectorXcd>{psi0}, opts).front();
}

std::vector<EvolutionResult> evolve(const SystemOperators& sys, const PulseSpec& spec,
                                    const std::vector<Eigen::VectorXcd>& psi0, const EvolveOptions& opts) {
  const Pulse pulse(spec);
  const DriveOperator op = prepare(sys, opts.sparsity);
  std::vector<EvolutionResult> out;
  out.reserve(psi0.size());
  for (const auto& p : psi0) out.push_back(run(sys, pulse, op, p, opts));
  return out;
}

LeakageReport leakage_report(const SystemOperators& sys, const Eigen::VectorXcd& psi, const std::string& tag,
                             double floor) {
  LeakageReport r;
  r.initial = tag;
  double comp = 0.0;
  for (Eigen::Index m = 0; m < psi.size(); ++m) {
    const double p = std::norm(psi(m));
    const Occupation& occ = sys.labels[static_cast<std::size_t>(m)];
    const bool photons = occ.back() > 0;
    const bool qubits_out = !computational(occ);
    if (!photons && !qubits_out) {
      comp += p;
      continue;
    }
    if (photons) r.resonator += p;
    if (qubits_out) r.qubit += p;
    if (photons && qubits_out) r.shared += p;
    if (p > floor) r.states[occ] += p;
  }
  r.total = std::clamp(1.0 - comp, 0.0, 1.0);
  return r;
}

LeakageReport leakage_report(const SystemOperators& sys, const EvolutionResult& result, const std::string& tag,
                             double floor) {
  return leakage_report(sys, result.final_state, tag, floor);
}

std::vector<Occupation> computational_labels(const SystemOperators& sys) {
  const std::size_t nq = sys.device.n_qubits();
  std::vector<Occupation> out;
  for (int s = 0; s < (1 << nq); ++s) {
    Occupation occ(nq + 1, 0);
    for (std::size_t j = 0; j < nq; ++j) occ[j] = (s >> (nq - 1 - j)) & 1;
    out.push_back(occ);
  }
  return out;
}

PropagatorPhases propagator_phases(const SystemOperators& sys, const PulseSpec& pulse, const EvolveOptions& opts,
                                   std::size_t samples) {
  if (sys.device.n_qubits() != 2) throw ConfigError("propagator_phases: two-qubit system required");
  const std::vector<Occupation> labels = computational_labels(sys);
  std::vector<Eigen::Index> idx;
  std::vector<Eigen::VectorXcd> psi0;
  for (const auto& l : labels) {
    idx.push_back(sys.eigen_index(l));
    psi0.push_back(labeled_state(sys, l));
  }
  EvolveOptions o = opts;
  o.samples = std::max<std::size_t>(samples, 2);
  const std::vector<EvolutionResult> runs = evolve(sys, pulse, psi0, o);

  PropagatorPhases out;
  for (const auto& r : runs) out.norm_drift = std::max(out.norm_drift, r.norm_drift);
  for (int c = 0; c < 4; ++c)
    for (int r = 0; r < 4; ++r) out.block(r, c) = runs[c].final_state(idx[r]);
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(out.block);
  out.defect = 1.0 - svd.singularValues().minCoeff();
  if (out.defect > 0.1) throw NumericalError("propagator_phases: computational block is ill conditioned");

  // Unwrap the ZZ combination along the samples. The IZ and ZI combinations
  // are taken relative to the dressed-energy phases, which removes the bare
  // qubit frequencies.
  const std::size_t ns = runs[0].sample_t.size();
  double zz = 0.0, iz = 0.0, zi = 0.0, prev_zz = 0.0, prev_iz = 0.0, prev_zi = 0.0;
  auto unwrap = [](double x, double prev) {
    double d = x - prev;
    d -= kTwoPi * std::round(d / kTwoPi);
    return prev + d;
  };
  for (std::size_t k = 0; k < ns; ++k) {
    const double t = runs[0].sample_t[k];
    cplx u[4];
    cplx v[4];
    for (int s = 0; s < 4; ++s) {
      u[s] = runs[s].samples[k](idx[s]);
      v[s] = u[s] * std::polar(1.0, kRadPerNsPerMHz * sys.energies(idx[s]) * t);
    }
    const double czz = std::arg(u[0] * std::conj(u[1]) * std::conj(u[2]) * u[3]);
    const double ciz = std::arg(v[0] * std::conj(v[1]) * v[2] * std::conj(v[3]));
    const double czi = std::arg(v[0] * v[1] * std::conj(v[2]) * std::conj(v[3]));
    zz = k == 0 ? czz : unwrap(czz, prev_zz);
    iz = k == 0 ? ciz : unwrap(ciz, prev_iz);
    zi = k == 0 ? czi : unwrap(czi, prev_zi);
    prev_zz = zz;
    prev_iz = iz;
    prev_zi = zi;
  }
  // arg u_ab = -int E_ab dt and E_ab carries (omega/2) z_a z_b with z = +1 for |0>.
  out.theta_zz = -0.5 * zz;
  out.theta_iz = -0.5 * iz;
  out.theta_zi = -0.5 * zi;
  return out;
}

AveragedLeakage averaged_leakage(const SystemOperators& sys, const PulseSpec& pulse,
                                 const std::vector<Occupation>& initial, const EvolveOptions& opts) {
  AveragedLeakage out;
  if (initial.empty()) return out;
  std::vector<Eigen::VectorXcd> psi0;
  for (const auto& l : initial) psi0.push_back(labeled_state(sys, l));
  const auto runs = evolve(sys, pulse, psi0, opts);
  for (std::size_t k = 0; k < runs.size(); ++k) {
    std::string tag;
    for (int x : initial[k]) tag += std::to_string(x);
    out.reports.push_back(leakage_report(sys, runs[k], tag));
    out.mean += out.reports.back().total;
  }
  out.mean /= static_cast<double>(runs.size());
  return out;
}

GateChargeScan gate_charge_worst_case(const DeviceSpec& device, const TruncationSpec& trunc,
                                      const PulseSpec& pulse, const std::vector<Occupation>& initial,
                                      const std::vector<double>& n_g_grid, const EvolveOptions& opts) {
  if (n_g_grid.size() < 11) throw ConfigError("gate_charge_worst_case: at least 11 grid points required");
  GateChargeScan scan;
  scan.n_g = n_g_grid;
  scan.worst = -1.0;
  for (double ng : n_g_grid) {
    DeviceSpec d = device;
    for (auto& t : d.transmons) t.n_g = ng;
    const SystemOperators sys = assemble_system(d, trunc);
    const double p = averaged_leakage(sys, pulse, initial, opts).mean;
    scan.leakage.push_back(p);
    if (p > scan.worst) {
      scan.worst = p;
      scan.worst_n_g = ng;
    }
  }
  return scan;
}

}  // namespace ripkit
