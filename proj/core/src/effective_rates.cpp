#include "ripkit/effective_rates.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numeric>

#include "ripkit/errors.hpp"
#include "ripkit/units.hpp"

namespace ripkit {

namespace {

constexpr double kPoleTol = 0.01;  // MHz

double integrate_trapezoid(const std::vector<double>& y, double dt) {
  if (y.size() < 2) return 0.0;
  double s = 0.5 * (y.front() + y.back());
  for (std::size_t k = 1; k + 1 < y.size(); ++k) s += y[k];
  return s * dt;
}

std::vector<cplx> finite_difference(const std::vector<cplx>& f, double dt) {
  const std::size_t n = f.size();
  std::vector<cplx> d(n, 0.0);
  if (n < 2) return d;
  if (n == 2) {
    d[0] = d[1] = (f[1] - f[0]) / dt;
    return d;
  }
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dt);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dt);
  for (std::size_t k = 1; k + 1 < n; ++k) d[k] = (f[k + 1] - f[k - 1]) / (2.0 * dt);
  return d;
}

// Weights so that int_0^h F(s) exp(-i w (h - s)) ds = a0 F0 + a1 F1 + b0 F0' + b1 F1'
// for the cubic Hermite interpolant of F on the panel.
struct PanelWeights {
  cplx decay, a0, a1, b0, b1;
};

PanelWeights panel_weights(cplx w, double h) {
  using Rule = boost::math::quadrature::gauss<double, 10>;
  PanelWeights p{std::exp(cplx(0.0, -1.0) * w * h), 0.0, 0.0, 0.0, 0.0};
  const auto& x = Rule::abscissa();
  const auto& wt = Rule::weights();
  auto add = [&](double xi, double wi) {
    const double u = 0.5 * (1.0 + xi);  // node on [0, 1]
    const cplx kern = std::exp(cplx(0.0, -1.0) * w * h * (1.0 - u)) * (0.5 * h * wi);
    const double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
    const double h10 = u * (1.0 - u) * (1.0 - u);
    const double h01 = u * u * (3.0 - 2.0 * u);
    const double h11 = u * u * (u - 1.0);
    p.a0 += kern * h00;
    p.a1 += kern * h01;
    p.b0 += kern * h10 * h;
    p.b1 += kern * h11 * h;
  };
  for (std::size_t i = 0; i < x.size(); ++i) {
    add(x[i], wt[i]);
    if (x[i] != 0.0) add(-x[i], wt[i]);
  }
  return p;
}

void check_pole(cplx omega, const char* where) {
  if (std::abs(omega) < kPoleTol)
    throw PoleError(std::string(where) + ": vanishing detuning (|Delta| < 10 kHz)");
}

EffectiveRates project_series(RateModel model, const std::vector<double>& t,
                              const std::vector<std::vector<double>>& e1,
                              const std::vector<std::vector<double>>& e2,
                              const std::vector<double>& e2_static) {
  EffectiveRates r;
  r.model = model;
  r.t = t;
  const std::size_t n = t.size();
  for (auto* s : {&r.first, &r.second}) {
    s->iz.resize(n);
    s->zi.resize(n);
    s->zz.resize(n);
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
  const Projection ps = project(e2_static[0], e2_static[1], e2_static[2], e2_static[3]);
  r.static_iz = ps.iz;
  r.static_zi = ps.zi;
  r.static_zz = ps.zz;
  return r;
}

std::vector<double> time_axis(const ResonatorTrajectory& tr) {
  std::vector<double> t(tr.size());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = tr.t(k);
  return t;
}

// Computational states in projection order: 00, 01, 10, 11 (qubit a first).
constexpr int kStates[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};

}  // namespace

std::string to_string(RateModel m) {
  switch (m) {
    case RateModel::jc:
      return "jc";
    case RateModel::kerr:
      return "kerr";
    case RateModel::abinitio:
      return "abinitio";
  }
  return "?";
}

double EffectiveRates::omega_iz(std::size_t k, bool with_static) const {
  return first.iz[k] + second.iz[k] + (with_static ? static_iz : 0.0);
}
double EffectiveRates::omega_zi(std::size_t k, bool with_static) const {
  return first.zi[k] + second.zi[k] + (with_static ? static_zi : 0.0);
}
double EffectiveRates::omega_zz(std::size_t k, bool with_static) const {
  return first.zz[k] + second.zz[k] + (with_static ? static_zz : 0.0);
}

double EffectiveRates::theta_zz(bool with_static) const {
  if (t.size() < 2) return 0.0;
  std::vector<double> w(t.size());
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = omega_zz(k, with_static);
  return kRadPerNsPerMHz * integrate_trapezoid(w, t[1] - t[0]);
}

Projection project(double e00, double e01, double e10, double e11) {
  return {0.5 * (e00 - e01 + e10 - e11), 0.5 * (e00 + e01 - e10 - e11), 0.5 * (e00 - e01 - e10 + e11)};
}

std::vector<double> response_kernel(const std::vector<cplx>& f, const std::vector<cplx>& fdot_in,
                                    double dt, cplx omega, ResponseMode mode, bool prehistory) {
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  if (n == 0) return out;
  if (mode != ResponseMode::quadrature) check_pole(omega, "response_kernel");
  const std::vector<cplx> fdot = fdot_in.empty() ? finite_difference(f, dt) : fdot_in;
  if (fdot.size() != n) throw ConfigError("response_kernel: derivative size mismatch");

  // Work in rad/ns and convert back at the end.
  const cplx w = kRadPerNsPerMHz * omega;
  const cplx i(0.0, 1.0);
  if (mode != ResponseMode::quadrature) {
    for (std::size_t k = 0; k < n; ++k) {
      const cplx F = kRadPerNsPerMHz * f[k];
      cplx I = F / (i * w);
      if (mode == ResponseMode::adiabatic2) I += kRadPerNsPerMHz * fdot[k] / (w * w);
      out[k] = std::imag(std::conj(F) * I) / kRadPerNsPerMHz;
    }
    return out;
  }
  const PanelWeights p = panel_weights(w, dt);
  cplx I = 0.0;
  if (prehistory) {
    if (std::abs(omega) < kPoleTol) throw PoleError("response_kernel: stationary prehistory at a pole");
    I = kRadPerNsPerMHz * f[0] / (i * w);
  }
  out[0] = std::imag(std::conj(kRadPerNsPerMHz * f[0]) * I) / kRadPerNsPerMHz;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    I = p.decay * I +
        kRadPerNsPerMHz * (p.a0 * f[k] + p.a1 * f[k + 1] + p.b0 * fdot[k] + p.b1 * fdot[k + 1]);
    out[k + 1] = std::imag(std::conj(kRadPerNsPerMHz * f[k + 1]) * I) / kRadPerNsPerMHz;
  }
  return out;
}

std::vector<double> response_function(const ResonatorTrajectory& tr, const OperatorDetuning& detuning,
                                      int n_a, int n_b, ResponseMode mode, std::optional<double> kappa_c,
                                      bool prehistory) {
  if (tr.size() == 0) return {};
  const double d = detuning(n_a, n_b);
  if (mode == ResponseMode::quadrature && tr.size() > 1) {
    const double period = 1e3 / std::max(std::abs(d), 1e-12);
    if (tr.dt > period / 20.0)
      throw ConfigError("response_function: fewer than 20 samples per detuning period");
  }
  const cplx omega(d, kappa_c ? -0.5 * *kappa_c : 0.0);
  std::vector<double> a = response_kernel(tr.eta, tr.eta_dot, tr.dt, omega, mode, prehistory);
  for (double& x : a) x = -x;
  return a;
}

EffectiveRates jc_rates(double chi_ac, double chi_bc, double delta_cd, const ResonatorTrajectory& tr,
                        ResponseMode mode) {
  const std::vector<double> a = response_function(tr, OperatorDetuning{delta_cd}, 0, 0, mode);
  const std::size_t n = tr.size();
  std::vector<std::vector<double>> e1(4, std::vector<double>(n)), e2(4, std::vector<double>(n));
  for (int s = 0; s < 4; ++s) {
    const int na = kStates[s][0], nb = kStates[s][1];
    for (std::size_t k = 0; k < n; ++k) {
      const double ph = std::norm(tr.eta[k]);
      e1[s][k] = 2.0 * chi_ac * ph * na + 2.0 * chi_bc * ph * nb;
      e2[s][k] = -2.0 * chi_ac * chi_bc * a[k] * (2 * na - 1) * (2 * nb - 1);
    }
  }
  EffectiveRates r = project_series(RateModel::jc, time_axis(tr), e1, e2, {0.0, 0.0, 0.0, 0.0});
  const double peak = std::sqrt(tr.peak_photons());
  if (std::max(std::abs(chi_ac), std::abs(chi_bc)) * peak >= std::abs(delta_cd))
    r.warnings.push_back("jc_rates: |chi eta| is not small compared to |Delta_cd|");
  return r;
}

EffectiveRates kerr_rates(double chi_ac, double chi_bc, double delta_cd, const ResonatorTrajectory& tr,
                          ResponseMode mode, std::optional<double> kappa_c) {
  const OperatorDetuning det{delta_cd, 2.0 * chi_ac, 2.0 * chi_bc, 0.0};
  for (int s = 0; s < 4; ++s) {
    if (std::abs(det(kStates[s][0], kStates[s][1])) < kPoleTol)
      throw PoleError("kerr_rates: Delta_cd at a qubit-state-dependent pole");
  }
  const std::size_t n = tr.size();
  std::vector<std::vector<double>> e1(4, std::vector<double>(n)), e2(4, std::vector<double>(n));
  for (int s = 0; s < 4; ++s) {
    const int na = kStates[s][0], nb = kStates[s][1];
    const double c = chi_ac * na + chi_bc * nb;
    std::vector<double> a(n, 0.0);
    if (c != 0.0) a = response_function(tr, det, na, nb, mode, kappa_c);
    for (std::size_t k = 0; k < n; ++k) {
      const double ph = std::norm(tr.eta[k]);
      e1[s][k] = 2.0 * chi_ac * ph * na + 2.0 * chi_bc * ph * nb;
      e2[s][k] = -4.0 * c * c * a[k];
    }
  }
  return project_series(RateModel::kerr, time_axis(tr), e1, e2, {0.0, 0.0, 0.0, 0.0});
}

double kerr_omega_zz(double chi_ac, double chi_bc, double delta_cd, double photons) {
  auto e = [&](int na, int nb) {
    const double c = chi_ac * na + chi_bc * nb;
    const double d = delta_cd + 2.0 * chi_ac * na + 2.0 * chi_bc * nb;
    if (std::abs(d) < kPoleTol) throw PoleError("kerr_omega_zz: pole");
    return -4.0 * c * c * photons / d;
  };
  return project(e(0, 0), e(0, 1), e(1, 0), e(1, 1)).zz;
}

StaticZZ static_zz(const DeviceSpec& device, double omega_a, double omega_b, double alpha_a,
                   double alpha_b) {
  if (device.n_qubits() != 2) throw ConfigError("static_zz: two-qubit device required");
  const double wa = device.transmons[0].omega_bar();
  const double wb = device.transmons[1].omega_bar();
  const double wc = device.omega_c;
  const double sab = wa + wb;
  const double j = ((sab - 2.0 * wc) / (2.0 * (wa - wc) * (wb - wc)) -
                    (sab + 2.0 * wc) / (2.0 * (wa + wc) * (wb + wc))) *
                   device.g[0] * device.g[1];
  const double dab = omega_a - omega_b;
  if (std::abs(dab - alpha_b) < kPoleTol || std::abs(dab + alpha_a) < kPoleTol)
    throw PoleError("static_zz: straddling pole (|Delta_ab| = |alpha|)");
  return {j, j * j / (dab - alpha_b) - j * j / (dab + alpha_a)};
}

// --- calibration ---

double accumulated_theta(const CalibrationProblem& p, const PulseSpec& spec) {
  if (spec.tau <= 0.0) return 0.0;
  const double static_part = p.include_static ? kRadPerNsPerMHz * p.static_zz * spec.tau : 0.0;
  if (spec.amplitude == 0.0) return static_part;
  const Pulse pulse(spec);
  ResonatorTrajectory tr;
  if (p.source == TrajectorySource::duffing) {
    tr = duffing_response(p.delta_cd, p.alpha_c, pulse);
  } else {
    // eta = -Omega_c(t) / (2 Delta_cd)
    const double dt = std::min(0.25, spec.tau / 400.0);
    const auto n = static_cast<std::size_t>(std::ceil(spec.tau / dt)) + 1;
    tr.t0 = spec.t0;
    tr.dt = spec.tau / static_cast<double>(n - 1);
    tr.detuning = p.delta_cd;
    tr.alpha_c = p.alpha_c;
    tr.pulse_end = pulse.end();
    tr.eta.resize(n);
    tr.eta_dot.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double t = tr.t(k);
      const Envelope e = pulse.envelope(t);
      tr.eta[k] = -cplx(e.y, -e.x) / (2.0 * p.delta_cd);
      tr.eta_dot[k] = -spec.amplitude * pulse.shape_derivative(t) / (2.0 * p.delta_cd);
    }
  }
  EffectiveRates r;
  switch (p.model) {
    case RateModel::jc:
      r = jc_rates(p.chi_ac, p.chi_bc, p.delta_cd, tr);
      break;
    case RateModel::kerr:
      r = kerr_rates(p.chi_ac, p.chi_bc, p.delta_cd, tr);
      break;
    case RateModel::abinitio:
      throw ConfigError("calibrate_gate: ab-initio calibration needs quartic coefficients");
  }
  return r.theta_zz(false) + static_part;
}

CalibrationResult calibrate_gate(const CalibrationProblem& p) {
  CalibrationResult out;
  out.pulse = p.pulse;
  if (p.theta_target == 0.0) {
    out.pulse.tau = 0.0;
    out.pulse.amplitude = 0.0;
    return out;
  }
  if (p.pulse.kind == PulseKind::gaussian && p.free == CalibrationParameter::tau)
    throw ConfigError("calibrate_gate: free tau is only supported for scale-free pulse shapes");

  auto with = [&](double x) {
    PulseSpec s = p.pulse;
    if (p.free == CalibrationParameter::tau) s.tau = x;
    else s.amplitude = x;
    return s;
  };
  auto g = [&](double x) {
    ++out.evaluations;
    return accumulated_theta(p, with(x)) - p.theta_target;
  };

  // theta grows monotonically with tau (fixed shape) and, below saturation,
  // with amplitude. Expand geometrically until the target is bracketed.
  const double upper = p.free == CalibrationParameter::tau ? p.tau_max : p.amplitude_max;
  double lo = p.free == CalibrationParameter::tau ? 1.0 : 1e-3;
  double hi = std::max(lo * 2.0, p.free == CalibrationParameter::tau ? p.pulse.tau : std::abs(p.pulse.amplitude));
  if (!(hi > lo)) hi = 2.0 * lo;
  double glo = g(lo);
  if (glo > 0.0) {
    // target below the smallest trial; shrink
    for (int i = 0; i < 60 && glo > 0.0; ++i) {
      hi = lo;
      lo *= 0.5;
      glo = g(lo);
    }
    if (glo > 0.0) throw NumericalError("calibrate_gate: target not bracketed from below");
  }
  double ghi = g(hi);
  while (ghi < 0.0) {
    if (hi >= upper)
      throw NumericalError("calibrate_gate: target theta unreachable (omega_zz saturates)");
    lo = hi;
    glo = ghi;
    hi = std::min(upper, 2.0 * hi);
    ghi = g(hi);
  }
  boost::uintmax_t iters = 100;
  const auto br = boost::math::tools::toms748_solve(
      g, lo, hi, glo, ghi, [](double a, double b) { return std::abs(b - a) < 1e-9 * std::max(1.0, std::abs(a)); },
      iters);
  const double x = 0.5 * (br.first + br.second);
  out.pulse = with(x);
  out.theta = accumulated_theta(p, out.pulse);
  if (std::abs(out.theta - p.theta_target) > 1e-4)
    throw ConvergenceError("calibrate_gate: root finder did not reach 1e-4 rad");
  return out;
}

// --- decoherence ---

DecoherenceEstimates decoherence_estimates(const DecoherenceInputs& in, const ResonatorTrajectory& tr) {
  const std::size_t nq = in.device.n_qubits();
  if (in.chi.size() != nq) throw ConfigError("decoherence_estimates: one chi per qubit required");
  if (!in.t1_us.empty() && in.t1_us.size() != nq)
    throw ConfigError("decoherence_estimates: one T1 per qubit required");
  if (in.kappa_c < 0.0) throw ConfigError("decoherence_estimates: kappa_c must be non-negative");
  DecoherenceEstimates d;
  d.gamma_p.resize(nq);
  d.gamma_phi.assign(nq, std::vector<double>(tr.size(), 0.0));
  d.gamma_phi_mean.assign(nq, 0.0);
  const double k = in.kappa_c;
  for (std::size_t j = 0; j < nq; ++j) {
    const double dj = in.device.transmons[j].omega_bar() - in.device.omega_c;
    d.gamma_p[j] = std::pow(in.device.g[j] / dj, 2) * k;
    const double chi = in.chi[j];
    const double denom = in.delta_cd * in.delta_cd + chi * chi + 0.25 * k * k;
    for (std::size_t s = 0; s < tr.size(); ++s)
      d.gamma_phi[j][s] = 2.0 * chi * chi * std::norm(tr.eta[s]) * k / denom;
    // average over [t0, t0 + tau] using the sampled part of the window
    if (in.tau > 0.0 && tr.size() > 1) {
      std::vector<double> y;
      for (std::size_t s = 0; s < tr.size() && tr.t(s) <= tr.t0 + in.tau + 1e-9; ++s) y.push_back(d.gamma_phi[j][s]);
      d.gamma_phi_mean[j] = integrate_trapezoid(y, tr.dt) / in.tau;
    }
    // MHz * ns = 1e-3
    d.error_dephasing += 0.4 * d.gamma_phi_mean[j] * in.tau * 1e-3;
    d.error_purcell += 0.2 * d.gamma_p[j] * in.tau * 1e-3;
    if (!in.t1_us.empty()) d.error_t1 += 0.4 * in.tau / (in.t1_us[j] * 1e3);
  }
  d.error_incoherent = d.error_dephasing + d.error_purcell + d.error_t1;
  return d;
}

}  // namespace ripkit
