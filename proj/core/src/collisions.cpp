#include "ripkit/collisions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <tuple>

#include "ripkit/errors.hpp"

namespace ripkit {

namespace {

using Occ3 = std::array<int, 3>;

int qubit_sum(const Occ3& n) { return n[0] + n[1]; }

bool computational(const Occ3& n) { return n[0] <= 1 && n[1] <= 1; }

// d/dalpha of the Kerr energy with alpha_a = alpha_b = alpha.
double alpha_weight(const Occ3& n) { return 0.5 * (n[0] * (n[0] - 1) + n[1] * (n[1] - 1)); }

Occupation to_label(const Occ3& n, std::size_t n_qubits) {
  if (n_qubits == 1) {
    if (n[1] != 0) throw ConfigError("collision: single-qubit device cannot occupy qubit b");
    return {n[0], n[2]};
  }
  return {n[0], n[1], n[2]};
}

std::string describe(const InversionTargets& t) {
  std::ostringstream os;
  os << "targets:";
  for (std::size_t j = 0; j < t.qubits.size(); ++j) {
    os << " omega01_" << static_cast<char>('a' + j) << "=" << t.qubits[j].omega01;
    if (t.qubits[j].two_chi) os << " 2chi_" << static_cast<char>('a' + j) << "c=" << *t.qubits[j].two_chi;
  }
  if (t.omega_c) os << " omega_c=" << *t.omega_c;
  return os.str();
}

}  // namespace

std::string to_string(CollisionCategory c) {
  switch (c) {
    case CollisionCategory::qubit_qubit:
      return "qubit-qubit";
    case CollisionCategory::qubit_resonator:
      return "qubit-resonator";
    case CollisionCategory::three_body:
      return "three-body";
  }
  return "?";
}

CollisionCategory CollisionSpec::category() const {
  if (left == right) throw ConfigError("collision: left and right states coincide");
  const bool a = left[0] != right[0], b = left[1] != right[1], c = left[2] != right[2];
  if (!c) return CollisionCategory::qubit_qubit;
  if (a && b) return CollisionCategory::three_body;
  return CollisionCategory::qubit_resonator;
}

CollisionSpec CollisionSpec::shifted(int k) const {
  CollisionSpec s = *this;
  s.left[2] += k;
  s.right[2] += k;
  if (s.left[2] < 0 || s.right[2] < 0) throw ConfigError("collision: negative photon number");
  return s;
}

std::string CollisionSpec::label() const {
  auto ket = [](const Occ3& n) {
    return "|" + std::to_string(n[0]) + "_a," + std::to_string(n[1]) + "_b," + std::to_string(n[2]) + "_c>";
  };
  return ket(left) + " ~ " + ket(right);
}

double KerrSpectrum::energy(const Occ3& n, double alpha) const {
  return omega_a * n[0] + omega_b * n[1] + omega_c * n[2] + alpha * alpha_weight(n) +
         two_chi_ac * n[0] * n[2] + two_chi_bc * n[1] * n[2] + two_chi_ab * n[0] * n[1];
}

CollisionRecord kerr_collision(const CollisionSpec& spec, const KerrSpectrum& kerr) {
  (void)spec.category();
  const double a = alpha_weight(spec.left) - alpha_weight(spec.right);
  if (a == 0.0) throw ConfigError("kerr_collision: condition has no anharmonicity dependence");
  const double b = kerr.energy(spec.left, 0.0) - kerr.energy(spec.right, 0.0);
  // raising both photon numbers by one changes b by this much
  const double db = kerr.two_chi_ac * (spec.left[0] - spec.right[0]) + kerr.two_chi_bc * (spec.left[1] - spec.right[1]);
  CollisionRecord r;
  r.spec = spec;
  r.model = CollisionModel::kerr;
  r.alpha = -b / a;
  r.slope = -db / a;
  r.intercept = r.alpha - *r.slope * spec.left[2];
  r.multiplicity = 1;
  r.provenance = "kerr";
  return r;
}

std::vector<CollisionSpec> enumerate_candidates(const KerrSpectrum& kerr, const EnumerationBounds& b) {
  if (b.max_level < 1 || b.max_photons < 0 || b.window < 0.0 || b.n_qubits < 1 || b.n_qubits > 2)
    throw ConfigError("enumerate_candidates: invalid bounds");
  std::vector<Occ3> states;
  const int max_b = b.n_qubits == 2 ? b.max_level : 0;
  for (int na = 0; na <= b.max_level; ++na)
    for (int nb = 0; nb <= max_b; ++nb)
      for (int nc = 0; nc <= b.max_photons; ++nc) states.push_back({na, nb, nc});

  auto within = [&](const Occ3& l, const Occ3& r) {
    auto diff = [&](double al) { return kerr.energy(l, al) - kerr.energy(r, al); };
    if (!b.alpha_range) return std::abs(diff(b.alpha)) <= b.window;
    const double d0 = diff(b.alpha_range->first), d1 = diff(b.alpha_range->second);
    if (d0 * d1 <= 0.0) return true;
    return std::min(std::abs(d0), std::abs(d1)) <= b.window;
  };

  std::vector<CollisionSpec> out;
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = i + 1; j < states.size(); ++j) {
      Occ3 l = states[i], r = states[j];
      if (b.require_computational && !computational(l) && !computational(r)) continue;
      // the more excited qubit side goes left
      if (qubit_sum(l) < qubit_sum(r) || (qubit_sum(l) == qubit_sum(r) && l < r)) std::swap(l, r);
      const CollisionSpec s{l, r};
      if (b.category && s.category() != *b.category) continue;
      if (within(l, r)) out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end(), [](const CollisionSpec& x, const CollisionSpec& y) {
    return std::tie(x.left, x.right) < std::tie(y.left, y.right);
  });
  return out;
}

std::vector<CollisionRecord> exact_collision_scan(const InversionTargets& targets,
                                                  const std::vector<CollisionSpec>& specs, double alpha_lo,
                                                  double alpha_hi, double step, const ExactScanOptions& opts) {
  if (!(step > 0.0) || !(alpha_hi > alpha_lo)) throw ConfigError("exact_collision_scan: invalid alpha grid");
  const std::size_t nq = targets.qubits.size();
  for (const auto& s : specs) {
    (void)s.category();
    for (const Occ3* n : {&s.left, &s.right}) {
      const int top = std::max((*n)[0], (*n)[1]);
      if (top >= opts.trunc.n_qubit_keep || (*n)[2] + (opts.fit_slope ? 1 : 0) >= opts.trunc.n_photon)
        throw ConfigError("exact_collision_scan: " + s.label() + " exceeds the truncation");
    }
  }
  std::vector<int> scanned = opts.scanned_qubits;
  if (scanned.empty())
    for (std::size_t j = 0; j < nq; ++j) scanned.push_back(static_cast<int>(j));

  std::optional<DeviceSpec> last;
  auto system_at = [&](double alpha, const std::optional<DeviceSpec>& seed) {
    InversionTargets t = targets;
    for (int j : scanned) t.qubits.at(static_cast<std::size_t>(j)).alpha = alpha;
    InversionResult inv = invert_parameters(t, opts.trunc, seed);
    return std::pair{assemble_system(inv.device, opts.trunc), inv.device};
  };
  auto diff = [&](const SystemOperators& sys, const CollisionSpec& s) -> std::optional<double> {
    try {
      return sys.energy(to_label(s.left, nq), kLabelLossOverlap) - sys.energy(to_label(s.right, nq), kLabelLossOverlap);
    } catch (const LabelError&) {
      return std::nullopt;
    }
  };

  std::vector<CollisionSpec> all = specs;
  if (opts.fit_slope)
    for (const auto& s : specs) all.push_back(s.shifted(1));

  const auto n_grid = static_cast<std::size_t>(std::floor((alpha_hi - alpha_lo) / step + 1e-9)) + 1;
  std::vector<double> grid(n_grid);
  std::vector<DeviceSpec> devices(n_grid);
  std::vector<std::vector<std::optional<double>>> d(all.size(), std::vector<std::optional<double>>(n_grid));
  for (std::size_t k = 0; k < n_grid; ++k) {
    grid[k] = alpha_lo + step * static_cast<double>(k);
    auto [sys, dev] = system_at(grid[k], last);
    last = dev;
    devices[k] = dev;
    for (std::size_t s = 0; s < all.size(); ++s) d[s][k] = diff(sys, all[s]);
  }

  struct Found {
    std::vector<double> roots;
    std::vector<AvoidedCrossing> avoided;
  };
  std::vector<Found> found(all.size());
  for (std::size_t s = 0; s < all.size(); ++s) {
    std::size_t k = 0;
    while (k + 1 < n_grid) {
      if (!d[s][k]) {
        // label-loss interval: extend over consecutive unlabelled points
        std::size_t e = k;
        while (e + 1 < n_grid && !d[s][e + 1]) ++e;
        AvoidedCrossing ac{grid[k > 0 ? k - 1 : k], grid[e + 1 < n_grid ? e + 1 : e],
                           std::numeric_limits<double>::infinity()};
        if (k > 0 && d[s][k - 1]) ac.gap = std::min(ac.gap, std::abs(*d[s][k - 1]));
        if (e + 1 < n_grid && d[s][e + 1]) ac.gap = std::min(ac.gap, std::abs(*d[s][e + 1]));
        found[s].avoided.push_back(ac);
        k = e + 1;
        continue;
      }
      if (!d[s][k + 1]) {
        ++k;
        continue;
      }
      const double f0 = *d[s][k], f1 = *d[s][k + 1];
      if (f0 == 0.0) {
        found[s].roots.push_back(grid[k]);
      } else if (f0 * f1 < 0.0) {
        double lo = grid[k], hi = grid[k + 1], flo = f0;
        bool lost = false;
        while (hi - lo > opts.tolerance) {
          const double mid = 0.5 * (lo + hi);
          const auto fm = diff(system_at(mid, devices[k]).first, all[s]);
          if (!fm) {
            lost = true;
            break;
          }
          if ((*fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = *fm;
          } else {
            hi = mid;
          }
        }
        if (lost) found[s].avoided.push_back({lo, hi, std::min(std::abs(f0), std::abs(f1))});
        else found[s].roots.push_back(0.5 * (lo + hi));
      }
      ++k;
    }
  }

  std::vector<CollisionRecord> out;
  const std::string prov = describe(targets);
  for (std::size_t s = 0; s < specs.size(); ++s) {
    const Found& f = found[s];
    std::optional<std::vector<double>> up;
    if (opts.fit_slope && found[specs.size() + s].roots.size() == f.roots.size()) up = found[specs.size() + s].roots;
    for (std::size_t r = 0; r < f.roots.size(); ++r) {
      CollisionRecord rec;
      rec.spec = specs[s];
      rec.model = CollisionModel::exact;
      rec.alpha = f.roots[r];
      if (up) rec.slope = (*up)[r] - f.roots[r];
      rec.intercept = rec.alpha - rec.slope.value_or(0.0) * specs[s].left[2];
      rec.multiplicity = static_cast<int>(f.roots.size());
      rec.avoided = f.avoided;
      rec.provenance = prov;
      out.push_back(rec);
    }
    if (f.roots.empty() && !f.avoided.empty()) {
      // avoided crossings only: keep them visible with multiplicity 0
      CollisionRecord rec;
      rec.spec = specs[s];
      rec.model = CollisionModel::exact;
      rec.alpha = std::numeric_limits<double>::quiet_NaN();
      rec.intercept = rec.alpha;
      rec.multiplicity = 0;
      rec.avoided = f.avoided;
      rec.provenance = prov;
      out.push_back(rec);
    }
  }
  return out;
}

std::vector<CollisionMargin> collision_margin(double alpha_device, const std::vector<CollisionRecord>& records) {
  std::vector<CollisionMargin> out;
  for (const auto& r : records) {
    if (std::isnan(r.alpha)) continue;
    auto it = std::find_if(out.begin(), out.end(), [&](const CollisionMargin& m) { return m.spec == r.spec; });
    const double m = std::abs(alpha_device - r.alpha);
    if (it == out.end()) out.push_back({r.spec, r.alpha, m});
    else if (m < it->margin) *it = {r.spec, r.alpha, m};
  }
  return out;
}

}  // namespace ripkit
