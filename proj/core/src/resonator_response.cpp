#include "ripkit/resonator_response.hpp"

#include <algorithm>
#include <array>
#include <boost/math/tools/roots.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>

#include "ripkit/errors.hpp"
#include "ripkit/faddeeva.hpp"
#include "ripkit/units.hpp"

namespace ripkit {

namespace {

cplx hermite(double s, double h, cplx p0, cplx m0, cplx p1, cplx m1) {
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * p0 + (s3 - 2 * s2 + s) * h * m0 + (-2 * s3 + 3 * s2) * p1 +
         (s3 - s2) * h * m1;
}

cplx hermite_d(double s, double h, cplx p0, cplx m0, cplx p1, cplx m1) {
  const double s2 = s * s;
  return ((6 * s2 - 6 * s) * p0 + (3 * s2 - 4 * s + 1) * h * m0 + (-6 * s2 + 6 * s) * p1 +
          (3 * s2 - 2 * s) * h * m1) /
         h;
}

}  // namespace

cplx ResonatorTrajectory::at(double t) const {
  if (eta.empty() || t <= t0) return t < t0 ? cplx(0.0) : eta.front();
  if (t >= t_end()) {
    const double w = rad_per_ns(detuning + alpha_c * std::norm(eta.back()));
    return eta.back() * std::exp(cplx(0.0, -w * (t - t_end())));
  }
  const double x = (t - t0) / dt;
  const auto k = std::min(static_cast<std::size_t>(x), size() - 2);
  return hermite(x - static_cast<double>(k), dt, eta[k], eta_dot[k], eta[k + 1], eta_dot[k + 1]);
}

cplx ResonatorTrajectory::derivative_at(double t) const {
  if (eta.empty() || t < t0) return 0.0;
  if (t >= t_end()) {
    const double w = rad_per_ns(detuning + alpha_c * std::norm(eta.back()));
    return cplx(0.0, -w) * at(t);
  }
  const double x = (t - t0) / dt;
  const auto k = std::min(static_cast<std::size_t>(x), size() - 2);
  return hermite_d(x - static_cast<double>(k), dt, eta[k], eta_dot[k], eta[k + 1], eta_dot[k + 1]);
}

double ResonatorTrajectory::peak_photons() const {
  double m = 0.0;
  for (const auto& e : eta) m = std::max(m, std::norm(e));
  return m;
}

double ResonatorTrajectory::residual() const { return photons(pulse_end); }

ResonatorTrajectory ResonatorTrajectory::constant(cplx value, double t0, double t1, double dt) {
  if (!(t1 > t0) || !(dt > 0.0)) throw ConfigError("constant trajectory: empty interval");
  ResonatorTrajectory tr;
  tr.t0 = t0;
  const auto n = static_cast<std::size_t>(std::ceil((t1 - t0) / dt)) + 1;
  tr.dt = (t1 - t0) / static_cast<double>(n - 1);
  tr.eta.assign(n, value);
  tr.eta_dot.assign(n, 0.0);
  tr.pulse_end = t1;
  return tr;
}

ResonatorTrajectory duffing_response(double delta_cd, double alpha_c, const Pulse& pulse,
                                     const DuffingOptions& opts) {
  using state = std::array<double, 2>;
  namespace ode = boost::numeric::odeint;

  const double t_start = pulse.start();
  const double t_stop = opts.t_end.value_or(pulse.end());
  if (!(t_stop > t_start)) throw ConfigError("duffing_response: horizon must extend past the pulse start");
  double dt = opts.dt.value_or(0.25);
  if (!opts.dt && delta_cd != 0.0) dt = std::min(dt, 1e3 / std::abs(delta_cd) / 40.0);
  const auto n = static_cast<std::size_t>(std::ceil((t_stop - t_start) / dt)) + 1;
  dt = (t_stop - t_start) / static_cast<double>(n - 1);

  const double wd = rad_per_ns(delta_cd);
  const double wa = rad_per_ns(alpha_c);
  auto rhs_c = [&](cplx eta, double t) {
    return cplx(0.0, -1.0) * ((wd + wa * std::norm(eta)) * eta + 0.5 * kRadPerNsPerMHz * pulse.complex_envelope(t));
  };
  auto rhs = [&](const state& x, state& dxdt, double t) {
    const cplx d = rhs_c({x[0], x[1]}, t);
    dxdt[0] = d.real();
    dxdt[1] = d.imag();
  };

  std::vector<double> times(n);
  for (std::size_t k = 0; k < n; ++k) times[k] = t_start + dt * static_cast<double>(k);

  ResonatorTrajectory tr;
  tr.t0 = t_start;
  tr.dt = dt;
  tr.detuning = delta_cd;
  tr.alpha_c = alpha_c;
  tr.pulse_end = pulse.end();
  tr.eta.reserve(n);
  tr.eta_dot.reserve(n);

  state x{0.0, 0.0};
  double last_t = t_start;
  try {
    auto stepper = ode::make_dense_output(opts.abs_tol, opts.rel_tol, ode::runge_kutta_dopri5<state>());
    ode::integrate_times(stepper, rhs, x, times.begin(), times.end(), std::min(dt, 0.01),
                         [&](const state& s, double t) {
                           const cplx e(s[0], s[1]);
                           tr.eta.push_back(e);
                           tr.eta_dot.push_back(rhs_c(e, t));
                           last_t = t;
                         });
  } catch (const std::exception& ex) {
    throw NumericalError("duffing_response: step size underflow near t = " + std::to_string(last_t) +
                         " ns (" + ex.what() + ")");
  }
  return tr;
}

cplx gaussian_linear_analytic(double delta_cd, double omega_c, double sigma, double t_g, double t) {
  const double d = rad_per_ns(delta_cd);
  const double om = rad_per_ns(omega_c);
  const double r2 = std::sqrt(2.0);
  const double s = 0.5 * d * d * sigma * sigma;
  const cplx z1((t - t_g) / (r2 * sigma), -d * sigma / r2);
  const cplx z2(t_g / (r2 * sigma), d * sigma / r2);
  // exp(-s) is folded into each error function to keep the terms bounded.
  const cplx bracket = scaled_erf(z1, s) + scaled_erf(z2, s);
  const cplx pre = cplx(0.0, -0.5) * om * std::sqrt(std::numbers::pi / 2.0) * sigma;
  return pre * std::exp(cplx(0.0, -d * (t - t_g))) * bracket;
}

double leakage_measure(double theta, double theta_g) {
  if (theta == 0.0) return 0.0;
  const double s = 0.5 * theta * theta;
  const cplx z(theta_g / (std::sqrt(2.0) * theta), theta / std::sqrt(2.0));
  const cplx v = std::exp(-s) + scaled_erf(z, s);
  return 0.5 * std::numbers::pi * theta * theta * std::norm(v);
}

SteadyState steady_state(double delta_cd, double alpha_c, double omega_c) {
  SteadyState out;
  const double lin = omega_c / (2.0 * delta_cd);
  if (delta_cd == 0.0) throw PoleError("steady_state: zero detuning");
  out.approx = -omega_c / (2.0 * (delta_cd + alpha_c * lin * lin));
  if (alpha_c == 0.0 || omega_c == 0.0) {
    out.exact = -lin;
    return out;
  }
  // n (Delta + alpha n)^2 = Omega^2 / 4 with n = |eta|^2; eta is real for real drive.
  const double target = 0.25 * omega_c * omega_c;
  auto g = [&](double n) { return n * (delta_cd + alpha_c * n) * (delta_cd + alpha_c * n) - target; };
  double lo = 0.0, hi;
  const bool opposite = delta_cd * alpha_c < 0.0;
  if (opposite) {
    const double nm = -delta_cd / (3.0 * alpha_c);
    const double gmax = g(nm) + target;
    if (target < gmax) {
      hi = nm;
      out.bistable = true;
    } else {
      lo = -delta_cd / alpha_c;
      hi = 2.0 * lo + 1.0;
    }
  } else {
    hi = lin * lin + 1.0;
  }
  while (g(hi) < 0.0) hi *= 2.0;
  boost::uintmax_t iters = 200;
  const auto br = boost::math::tools::toms748_solve(g, lo, hi, boost::math::tools::eps_tolerance<double>(60), iters);
  const double n = 0.5 * (br.first + br.second);
  out.exact = -omega_c / (2.0 * (delta_cd + alpha_c * n));
  return out;
}

}  // namespace ripkit
