#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "config.hpp"
#include "ripkit/cache.hpp"
#include "ripkit/collisions.hpp"
#include "ripkit/dynamics.hpp"
#include "ripkit/effective_rates.hpp"
#include "ripkit/errors.hpp"
#include "ripkit/normal_modes.hpp"
#include "ripkit/resonator_response.hpp"

namespace ripkit::cli {

namespace {

void warn(const RunContext& ctx, const std::vector<std::string>& w) {
  if (ctx.warnings) ctx.warnings->insert(ctx.warnings->end(), w.begin(), w.end());
}

TruncationSpec default_truncation(const DeviceSpec& d) {
  return d.n_qubits() == 2 ? TruncationSpec::two_qubit() : TruncationSpec::single_qubit();
}

SystemOperators system_for(const DeviceSpec& d, const TruncationSpec& t, const RunContext& ctx) {
  SystemOperators s = ctx.cache_dir ? cached_assemble(d, t, *ctx.cache_dir) : assemble_system(d, t);
  warn(ctx, s.warnings);
  return s;
}

double dressed_resonator(const ResolvedDevice& rd) {
  if (rd.targets && rd.targets->omega_c) return *rd.targets->omega_c;
  const TruncationSpec light{30, 8, 6};
  return dressed_spectrum(assemble_system(rd.device, light)).omega_c;
}

// Resonator frequency for commands that only need the carrier.
double nominal_resonator(const YAML::Node& root) {
  if (root["pulse"] && root["pulse"]["omega_d_mhz"]) return 0.0;  // carrier given explicitly
  if (root["targets"] && root["targets"]["omega_c_mhz"]) return get_double(root["targets"], "omega_c_mhz", 0.0);
  return dressed_resonator(resolve_device(root));
}

double two_chi(const YAML::Node& root, const YAML::Node& block, int j) {
  const std::string key = j == 0 ? "two_chi_ac_mhz" : "two_chi_bc_mhz";
  if (block && block[key]) return get_double(block, key, 0.0);
  const YAML::Node q = root["targets"] ? root["targets"]["qubits"] : YAML::Node();
  if (q && q.IsSequence() && static_cast<int>(q.size()) > j && q[j]["two_chi_mhz"])
    return get_double(q[j], "two_chi_mhz", 0.0);
  if (root["device"]) {
    // quartic cross-Kerr for a pair, exact dressed shift for a single qubit
    const ResolvedDevice rd = resolve_device(root);
    if (rd.device.n_qubits() == 2) return quartic_coefficients(bogoliubov(rd.device), rd.device).two_chi(j, 2);
    if (j == 1) return 0.0;
    return dressed_spectrum(assemble_system(rd.device, {30, 8, 8})).two_chi[0];
  }
  if (j == 1) return 0.0;  // single qubit
  throw ConfigError("config: " + key + " not given and no device or targets.qubits two_chi_mhz");
}

Table diagonalize(const YAML::Node& root, const RunContext& ctx, std::vector<Table>& extra) {
  const ResolvedDevice rd = resolve_device(root);
  const SystemOperators sys = system_for(rd.device, truncation(root, default_truncation(rd.device)), ctx);
  const int levels = get_int(root["diagonalize"], "levels", 30);
  Table t{"eigenstates", {"index", "label", "energy_mhz", "overlap"}, {}};
  for (Eigen::Index k = 0; k < std::min<Eigen::Index>(levels, sys.dimension()); ++k)
    t.add({static_cast<long long>(k), occupation_label(sys.labels[k]), sys.energies(k), sys.overlaps[k]});
  const DressedSpectrum ds = dressed_spectrum(sys);
  Table d{"dressed", {"qubit", "omega01_mhz", "alpha_mhz", "two_chi_mhz", "omega_c_mhz"}, {}};
  for (std::size_t j = 0; j < ds.omega.size(); ++j)
    d.add({std::string(1, static_cast<char>('a' + j)), ds.omega[j], ds.alpha[j], ds.two_chi[j], ds.omega_c});
  Table p{"device", {"qubit", "e_c_mhz", "e_j_mhz", "n_g", "g_mhz", "omega_c_mhz"}, {}};
  for (std::size_t j = 0; j < rd.device.n_qubits(); ++j)
    p.add({std::string(1, static_cast<char>('a' + j)), rd.device.transmons[j].E_C, rd.device.transmons[j].E_J,
           rd.device.transmons[j].n_g, rd.device.g[j], rd.device.omega_c});
  extra.push_back(std::move(d));
  extra.push_back(std::move(p));
  for (const auto& c : sys.conflicts)
    if (ctx.warnings) ctx.warnings->push_back("label conflict on " + occupation_label(c.label));
  return t;
}

Table normal_modes(const YAML::Node& root, std::vector<Table>& extra) {
  const ResolvedDevice rd = resolve_device(root);
  if (rd.device.n_qubits() != 2) throw ConfigError("normal-modes: needs a two-qubit device");
  const HybridizationData h = bogoliubov(rd.device);
  const QuarticCoefficients q = quartic_coefficients(h, rd.device);
  Table t{"normal_modes", {"coefficient", "pattern", "value_mhz"}, {}};
  for (const auto& row : coefficient_report(q))
    for (const auto& [pattern, v] : row.terms) t.add({row.name, pattern, v});
  Table m{"hybridization", {"matrix", "row", "col", "value"}, {}};
  for (const auto& [name, mat] : {std::pair{"U", &h.U}, std::pair{"V", &h.V}})
    for (Eigen::Index r = 0; r < mat->rows(); ++r)
      for (Eigen::Index c = 0; c < mat->cols(); ++c)
        m.add({std::string(name), static_cast<long long>(r), static_cast<long long>(c), (*mat)(r, c)});
  extra.push_back(std::move(m));
  return t;
}

Table pulse_table(const YAML::Node& root, std::vector<Table>& extra) {
  const Pulse pulse(pulse_spec(root, nominal_resonator(root)));
  const int n = std::max(2, get_int(root["pulse"], "samples", 401));
  Table t{"pulse", {"t_ns", "omega_cy_mhz", "omega_cx_mhz", "lab_drive_mhz"}, {}};
  for (int k = 0; k < n; ++k) {
    const double time = pulse.start() + (pulse.end() - pulse.start()) * k / (n - 1);
    const Envelope e = pulse.envelope(time);
    t.add({time, e.y, e.x, pulse.lab_drive(time)});
  }
  if (root["pulse"]["spectrum_mhz"]) {
    Table s{"pulse_spectrum", {"f_mhz", "re", "im", "abs"}, {}};
    for (double f : get_grid(root["pulse"], "spectrum_mhz", "pulse")) {
      const cplx a = spectrum(pulse, f);
      s.add({f, a.real(), a.imag(), std::abs(a)});
    }
    extra.push_back(std::move(s));
  }
  return t;
}

Table response(const YAML::Node& root, std::vector<Table>& extra) {
  const Pulse pulse(pulse_spec(root, nominal_resonator(root)));
  const YAML::Node r = root["response"];
  DuffingOptions o;
  if (r && r["t_end_ns"]) o.t_end = get_double(r, "t_end_ns", 0.0);
  if (r && r["dt_ns"]) o.dt = get_double(r, "dt_ns", 0.0);
  const ResonatorTrajectory tr = duffing_response(pulse_detuning(root), get_double(r, "alpha_c_mhz", 0.0), pulse, o);
  Table t{"response", {"t_ns", "re_eta", "im_eta", "photons"}, {}};
  const std::size_t stride = static_cast<std::size_t>(std::max(1, get_int(r, "stride", 1)));
  for (std::size_t k = 0; k < tr.size(); k += stride) t.add({tr.t(k), tr.eta[k].real(), tr.eta[k].imag(), std::norm(tr.eta[k])});
  Table s{"response_summary", {"delta_cd_mhz", "peak_photons", "residual_photons"}, {}};
  s.add({pulse_detuning(root), tr.peak_photons(), tr.residual()});
  extra.push_back(std::move(s));
  return t;
}

Table rates(const YAML::Node& root, const RunContext& ctx) {
  const YAML::Node r = root["rates"];
  if (!r) throw ConfigError("config: missing 'rates' block");
  std::vector<std::string> models;
  if (r["model"] && r["model"].IsSequence()) models = r["model"].as<std::vector<std::string>>();
  else models.push_back(get_string(r, "model", "kerr"));
  const std::vector<double> deltas = get_grid(r, "delta_cd_mhz", "rates");
  const double photons = get_double(r, "photons", "rates");
  const ResponseMode mode = response_mode(get_string(r, "mode", "adiabatic1"));

  std::optional<QuarticCoefficients> q;
  Table t{"rates", {"delta_cd_mhz", "omega_iz_mhz", "omega_zi_mhz", "omega_zz_mhz", "model"}, {}};
  for (const std::string& name : models) {
    const RateModel m = rate_model(name);
    if (m == RateModel::abinitio && !q) {
      const ResolvedDevice rd = resolve_device(root);
      if (rd.device.n_qubits() != 2) throw ConfigError("rates: ab-initio model needs a two-qubit device");
      q = quartic_coefficients(bogoliubov(rd.device), rd.device);
    }
    for (double delta : deltas) {
      ResonatorTrajectory tr = ResonatorTrajectory::constant(cplx(std::sqrt(photons), 0.0), 0.0, 1.0);
      tr.detuning = delta;
      EffectiveRates e;
      if (m == RateModel::abinitio) {
        tr.alpha_c = q->alpha(2);
        AbinitioOptions o;
        o.mode = mode;
        e = abinitio_rates(*q, delta, tr, o);
      } else {
        const double ca = 0.5 * two_chi(root, r, 0), cb = 0.5 * two_chi(root, r, 1);
        e = m == RateModel::jc ? jc_rates(ca, cb, delta, tr, mode) : kerr_rates(ca, cb, delta, tr, mode);
      }
      warn(ctx, e.warnings);
      t.add({delta, e.omega_iz(0), e.omega_zi(0), e.omega_zz(0), name});
    }
  }
  return t;
}

std::vector<Eigen::VectorXcd> initial_states(const YAML::Node& e, const SystemOperators& sys, const RunContext& ctx,
                                             std::vector<std::string>& tags) {
  std::vector<Eigen::VectorXcd> out;
  if (e && e["superposition"]) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(sys.dimension());
    std::string tag;
    for (const auto& o : occupation_list(e["superposition"], "evolve.superposition")) {
      psi += labeled_state(sys, o);
      tag += (tag.empty() ? "" : "+") + occupation_label(o);
    }
    out.push_back(psi.normalized());
    tags.push_back(tag);
  }
  if (e && e["initial"]) {
    for (const auto& o : occupation_list(e["initial"], "evolve.initial")) {
      out.push_back(labeled_state(sys, o));
      tags.push_back(occupation_label(o));
    }
  }
  if (get_bool(e, "random", false)) {
    // reproducible random state in the computational subspace
    std::mt19937_64 rng(ctx.seed);
    std::normal_distribution<double> g;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(sys.dimension());
    for (const auto& o : computational_labels(sys)) psi += cplx(g(rng), g(rng)) * labeled_state(sys, o);
    out.push_back(psi.normalized());
    tags.push_back("random");
  }
  if (out.empty()) {
    for (const auto& o : computational_labels(sys)) {
      out.push_back(labeled_state(sys, o));
      tags.push_back(occupation_label(o));
    }
  }
  return out;
}

Table evolve_table(const YAML::Node& root, const RunContext& ctx, std::vector<Table>& extra) {
  const ResolvedDevice rd = resolve_device(root);
  const SystemOperators sys = system_for(rd.device, truncation(root, default_truncation(rd.device)), ctx);
  const YAML::Node e = root["evolve"];
  const double omega_c = (rd.targets && rd.targets->omega_c) ? *rd.targets->omega_c : dressed_spectrum(sys).omega_c;
  const PulseSpec spec = pulse_spec(root, omega_c);
  EvolveOptions o;
  o.rel_tol = get_double(e, "rel_tol", o.rel_tol);
  o.abs_tol = get_double(e, "abs_tol", o.abs_tol);
  if (e && e["t_end_ns"]) o.t_end = get_double(e, "t_end_ns", 0.0);
  std::vector<std::string> tags;
  const auto psi0 = initial_states(e, sys, ctx, tags);
  const auto results = evolve(sys, spec, psi0, o);
  const int top = get_int(e, "top_states", 10);
  Table t{"leakage", {"initial", "total", "resonator", "qubit", "shared", "norm_drift", "top_photon"}, {}};
  Table s{"leaked_states", {"initial", "state", "population"}, {}};
  for (std::size_t k = 0; k < results.size(); ++k) {
    const LeakageReport L = leakage_report(sys, results[k], tags[k]);
    warn(ctx, results[k].warnings);
    t.add({tags[k], L.total, L.resonator, L.qubit, L.shared, results[k].norm_drift, results[k].top_photon});
    std::vector<std::pair<double, Occupation>> v;
    for (const auto& [occ, p] : L.states) v.emplace_back(p, occ);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
    for (std::size_t i = 0; i < v.size() && static_cast<int>(i) < top; ++i)
      s.add({tags[k], occupation_label(v[i].second), v[i].first});
  }
  extra.push_back(std::move(s));
  return t;
}

KerrSpectrum kerr_spectrum(const YAML::Node& root, const YAML::Node& c) {
  const YAML::Node t = root["targets"];
  if (!t || !t["qubits"]) throw ConfigError("collisions: needs a 'targets' block");
  KerrSpectrum k;
  k.omega_a = get_double(t["qubits"][0], "omega01_mhz", "targets.qubits");
  if (t["qubits"].size() > 1) k.omega_b = get_double(t["qubits"][1], "omega01_mhz", "targets.qubits");
  k.omega_c = get_double(t, "omega_c_mhz", "targets");
  k.two_chi_ac = two_chi(root, c, 0);
  k.two_chi_bc = two_chi(root, c, 1);
  k.two_chi_ab = get_double(c, "two_chi_ab_mhz", 0.0);
  return k;
}

Table collisions(const YAML::Node& root, const RunContext& ctx) {
  const YAML::Node c = root["collisions"];
  if (!c) throw ConfigError("config: missing 'collisions' block");
  const KerrSpectrum kerr = kerr_spectrum(root, c);
  std::vector<CollisionSpec> specs;
  if (c["specs"]) {
    for (const auto& s : c["specs"]) {
      if (!s["left"] || !s["right"]) throw ConfigError("collisions.specs entries need left and right");
      const auto l = s["left"].as<std::vector<int>>(), r = s["right"].as<std::vector<int>>();
      if (l.size() != 3 || r.size() != 3) throw ConfigError("collisions.specs: occupations are (n_a, n_b, n_c)");
      specs.push_back({{l[0], l[1], l[2]}, {r[0], r[1], r[2]}});
    }
  }
  if (const YAML::Node en = c["enumerate"]) {
    EnumerationBounds b;
    b.max_level = get_int(en, "max_level", b.max_level);
    b.max_photons = get_int(en, "max_photons", b.max_photons);
    b.n_qubits = static_cast<int>(root["targets"]["qubits"].size());
    b.window = get_double(en, "window_mhz", b.window);
    b.alpha = get_double(en, "alpha_mhz", b.alpha);
    if (en["alpha_range_mhz"]) {
      const auto r = en["alpha_range_mhz"].as<std::vector<double>>();
      if (r.size() != 2) throw ConfigError("collisions.enumerate.alpha_range_mhz needs two values");
      b.alpha_range = std::pair{r[0], r[1]};
    }
    const auto found = enumerate_candidates(kerr, b);
    specs.insert(specs.end(), found.begin(), found.end());
  }
  if (specs.empty()) throw ConfigError("collisions: no specs given and nothing enumerated");

  std::vector<CollisionRecord> records;
  const std::string model = get_string(c, "model", "kerr");
  if (model == "kerr") {
    for (const auto& s : specs) records.push_back(kerr_collision(s, kerr));
  } else if (model == "exact") {
    const ResolvedDevice rd = resolve_device(root);
    if (!rd.targets) throw ConfigError("collisions: exact scans need a 'targets' block");
    ExactScanOptions o;
    o.trunc = truncation(root, o.trunc);
    o.fit_slope = get_bool(c, "fit_slope", false);
    o.tolerance = get_double(c, "tolerance_mhz", o.tolerance);
    records = exact_collision_scan(*rd.targets, specs, get_double(c, "alpha_lo_mhz", "collisions"),
                                   get_double(c, "alpha_hi_mhz", "collisions"), get_double(c, "step_mhz", 0.5), o);
  } else {
    throw ConfigError("collisions: model must be kerr or exact");
  }
  Table t{"collisions",
          {"spec", "category", "model", "alpha_mhz", "intercept_mhz", "slope_mhz_per_photon", "multiplicity", "avoided"},
          {}};
  for (const auto& r : records) {
    t.add({r.spec.label(), to_string(r.spec.category()), std::string(r.model == CollisionModel::kerr ? "kerr" : "exact"),
           r.alpha, r.intercept, r.slope.value_or(std::numeric_limits<double>::quiet_NaN()),
           static_cast<long long>(r.multiplicity), static_cast<long long>(r.avoided.size())});
  }
  (void)ctx;
  return t;
}

Table calibrate(const YAML::Node& root) {
  const YAML::Node c = root["calibrate"];
  CalibrationProblem p;
  p.model = rate_model(get_string(c, "model", "kerr"));
  p.chi_ac = 0.5 * two_chi(root, c, 0);
  p.chi_bc = 0.5 * two_chi(root, c, 1);
  if (!c || !c["two_chi_bc_mhz"]) {
    const YAML::Node q = root["targets"] ? root["targets"]["qubits"] : YAML::Node();
    if (!q || q.size() < 2) p.chi_bc = p.chi_ac;  // symmetric pair unless told otherwise
  }
  p.delta_cd = pulse_detuning(root);
  p.alpha_c = get_double(c, "alpha_c_mhz", 0.0);
  p.pulse = pulse_spec(root, std::max(nominal_resonator(root), 1.0));
  p.theta_target = get_double(c, "theta_target_rad", std::numbers::pi / 2);
  const std::string free = get_string(c, "free", "tau");
  if (free == "tau") p.free = CalibrationParameter::tau;
  else if (free == "amplitude") p.free = CalibrationParameter::amplitude;
  else throw ConfigError("calibrate.free must be tau or amplitude");
  const std::string src = get_string(c, "trajectory", "adiabatic");
  if (src == "adiabatic") p.source = TrajectorySource::adiabatic;
  else if (src == "duffing") p.source = TrajectorySource::duffing;
  else throw ConfigError("calibrate.trajectory must be adiabatic or duffing");
  if (c && c["static_zz_mhz"]) {
    p.static_zz = get_double(c, "static_zz_mhz", 0.0);
    p.include_static = true;
  }
  const CalibrationResult r = calibrate_gate(p);
  Table t{"calibration", {"tau_ns", "amplitude_mhz", "photons", "theta_rad", "evaluations"}, {}};
  const double photons = p.delta_cd != 0.0 ? std::pow(r.pulse.amplitude / (2.0 * p.delta_cd), 2) : 0.0;
  t.add({r.pulse.tau, r.pulse.amplitude, photons, r.theta, static_cast<long long>(r.evaluations)});
  return t;
}

}  // namespace

std::string occupation_label(const std::vector<int>& occ) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < occ.size(); ++i) os << (i ? " " : "") << occ[i];
  os << ')';
  return os.str();
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"diagonalize", "normal-modes", "pulse",     "response",
                                              "rates",       "evolve",       "collisions", "calibrate"};
  return names;
}

bool is_sweepable(const std::string& name) {
  return name == "rates" || name == "response" || name == "evolve" || name == "collisions" || name == "calibrate";
}

std::vector<Table> run_command(const std::string& name, const YAML::Node& root, const RunContext& ctx) {
  std::vector<Table> extra;
  Table main;
  if (name == "diagonalize") main = diagonalize(root, ctx, extra);
  else if (name == "normal-modes") main = normal_modes(root, extra);
  else if (name == "pulse") main = pulse_table(root, extra);
  else if (name == "response") main = response(root, extra);
  else if (name == "rates") main = rates(root, ctx);
  else if (name == "evolve") main = evolve_table(root, ctx, extra);
  else if (name == "collisions") main = collisions(root, ctx);
  else if (name == "calibrate") main = calibrate(root);
  else throw ConfigError("unknown command '" + name + "'");
  std::vector<Table> out;
  out.push_back(std::move(main));
  for (auto& t : extra) out.push_back(std::move(t));
  return out;
}

}  // namespace ripkit::cli
