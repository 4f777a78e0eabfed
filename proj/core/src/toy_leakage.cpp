#include "ripkit/toy_leakage.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "ripkit/errors.hpp"
#include "ripkit/units.hpp"

namespace ripkit {

namespace {

using cplx = std::complex<double>;
using Rule = boost::math::quadrature::gauss<double, 20>;

// Gauss-Legendre nodes and weights mapped onto [a, b].
template <class F>
void for_nodes(double a, double b, F&& f) {
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (std::size_t i = 0; i < x.size(); ++i) {
    f(c + h * x[i], h * w[i]);
    if (x[i] != 0.0) f(c - h * x[i], h * w[i]);
  }
}

struct Generators {
  Eigen::Matrix3cd k1, k2;
};

// K1 = int H, K2 = -(i/2) int dt' [H(t'), int_0^t' H(t'') dt''] over n panels.
Generators generators(const ThreeLevelSpec& s, double tau, int panels) {
  Generators g{Eigen::Matrix3cd::Zero(), Eigen::Matrix3cd::Zero()};
  const double h = tau / panels;
  for (int p = 0; p < panels; ++p) {
    const double a = p * h, b = a + h;
    Eigen::Matrix3cd panel = Eigen::Matrix3cd::Zero();
    for_nodes(a, b, [&](double t, double w) {
      const Eigen::Matrix3cd ht = s.interaction(t);
      Eigen::Matrix3cd inner = g.k1;
      for_nodes(a, t, [&](double u, double v) { inner += v * s.interaction(u); });
      g.k2 += w * (ht * inner - inner * ht);
      panel += w * ht;
    });
    g.k1 += panel;
  }
  g.k2 *= cplx(0.0, -0.5);
  return g;
}

cplx amplitude(const Generators& g, int from, int to, int order) {
  const cplx i(0.0, 1.0);
  Eigen::Matrix3cd u = Eigen::Matrix3cd::Identity() - i * g.k1;
  if (order >= 2) u += -i * g.k2 - 0.5 * g.k1 * g.k1;
  return u(to, from);
}

}  // namespace

Eigen::Matrix3cd ThreeLevelSpec::interaction(double t) const {
  Eigen::Matrix3cd h = Eigen::Matrix3cd::Zero();
  const double e[3] = {0.0, delta_eg, delta_fg};
  auto set = [&](int row, int col, const Coupling& c) {
    if (!c) return;
    const cplx v = kRadPerNsPerMHz * c(t) * std::polar(1.0, kRadPerNsPerMHz * (e[row] - e[col]) * t);
    h(row, col) = v;
    h(col, row) = std::conj(v);
  };
  set(1, 0, lambda_ge);
  set(2, 0, lambda_gf);
  set(2, 1, lambda_ef);
  return h;
}

cplx magnus_amplitude(const ThreeLevelSpec& spec, Level from, Level to, int order, double tau,
                      const MagnusOptions& opts) {
  if (order < 1 || order > 2) throw ConfigError("magnus_amplitude: order must be 1 or 2");
  if (!(tau > 0.0)) throw ConfigError("magnus_amplitude: horizon must be positive");
  const int a = static_cast<int>(from), b = static_cast<int>(to);
  int panels = 4;
  cplx prev = amplitude(generators(spec, tau, panels), a, b, order);
  for (int r = 0; r < opts.max_refinements; ++r) {
    panels *= 2;
    const cplx cur = amplitude(generators(spec, tau, panels), a, b, order);
    if (std::abs(cur - prev) <= opts.tolerance * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  throw ConvergenceError("magnus_amplitude: nested quadrature did not converge");
}

LeakageBound leakage_error_bound(double p_leak, int d) {
  if (!(p_leak >= 0.0 && p_leak <= 1.0)) throw ConfigError("leakage_error_bound: p_L outside [0, 1]");
  if (d < 2) throw ConfigError("leakage_error_bound: subspace dimension must be at least 2");
  return {d * (1.0 - p_leak), 1.0 - p_leak, p_leak};
}

double average_leakage(const Eigen::MatrixXcd& u, const std::vector<int>& comp) {
  if (u.rows() != u.cols()) throw ConfigError("average_leakage: square matrix required");
  if (comp.empty()) throw ConfigError("average_leakage: empty computational subspace");
  std::vector<bool> in(static_cast<std::size_t>(u.rows()), false);
  for (int k : comp) in.at(static_cast<std::size_t>(k)) = true;
  double p = 0.0;
  for (int k : comp) {
    for (Eigen::Index r = 0; r < u.rows(); ++r)
      if (!in[static_cast<std::size_t>(r)]) p += std::norm(u(r, k));
  }
  return p / static_cast<double>(comp.size());
}

}  // namespace ripkit
