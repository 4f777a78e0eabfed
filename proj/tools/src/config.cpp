#include "config.hpp"

#include <cmath>

#include "ripkit/errors.hpp"

namespace ripkit::cli {

YAML::Node load_config(const std::filesystem::path& path) {
  try {
    return YAML::LoadFile(path.string());
  } catch (const YAML::Exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
}

namespace {

template <class T>
T as(const YAML::Node& v, const std::string& key) {
  try {
    return v.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

}  // namespace

double get_double(const YAML::Node& n, const std::string& key, const std::string& where) {
  if (!n || !n[key]) throw ConfigError("config: missing '" + key + "' in " + where);
  return as<double>(n[key], key);
}

double get_double(const YAML::Node& n, const std::string& key, double fallback) {
  return n && n[key] ? as<double>(n[key], key) : fallback;
}

int get_int(const YAML::Node& n, const std::string& key, int fallback) {
  return n && n[key] ? as<int>(n[key], key) : fallback;
}

std::string get_string(const YAML::Node& n, const std::string& key, const std::string& fallback) {
  return n && n[key] ? as<std::string>(n[key], key) : fallback;
}

bool get_bool(const YAML::Node& n, const std::string& key, bool fallback) {
  return n && n[key] ? as<bool>(n[key], key) : fallback;
}

std::vector<double> get_grid(const YAML::Node& n, const std::string& key, const std::string& where) {
  if (!n || !n[key]) throw ConfigError("config: missing '" + key + "' in " + where);
  const YAML::Node g = n[key];
  std::vector<double> out;
  if (g.IsScalar()) {
    out.push_back(as<double>(g, key));
  } else if (g.IsSequence()) {
    for (const auto& x : g) out.push_back(as<double>(x, key));
  } else if (g.IsMap()) {
    const double from = get_double(g, "from", key);
    const double to = get_double(g, "to", key);
    if (g["points"]) {
      const int p = as<int>(g["points"], key);
      if (p < 1) throw ConfigError("config: '" + key + "' needs at least one point");
      for (int k = 0; k < p; ++k) out.push_back(p == 1 ? from : from + (to - from) * k / (p - 1));
    } else {
      const double step = get_double(g, "step", key);
      if (step == 0.0 || (to - from) / step < 0.0) throw ConfigError("config: bad step in '" + key + "'");
      const long count = std::lround(std::floor((to - from) / step + 1e-9)) + 1;
      for (long k = 0; k < count; ++k) out.push_back(from + step * static_cast<double>(k));
    }
  }
  if (out.empty()) throw ConfigError("config: '" + key + "' is empty");
  return out;
}

ResolvedDevice resolve_device(const YAML::Node& root) {
  ResolvedDevice r;
  if (const YAML::Node d = root["device"]) {
    if (!d["transmons"] || !d["transmons"].IsSequence())
      throw ConfigError("config: device.transmons must be a list");
    for (const auto& t : d["transmons"]) {
      TransmonSpec s;
      s.E_C = get_double(t, "e_c_mhz", "device.transmons");
      s.E_J = get_double(t, "e_j_mhz", "device.transmons");
      s.n_g = get_double(t, "n_g", 0.0);
      r.device.transmons.push_back(s);
      r.device.g.push_back(get_double(t, "g_mhz", "device.transmons"));
    }
    r.device.omega_c = get_double(d, "omega_c_mhz", "device");
    if (d["kappa_c_mhz"]) r.device.kappa_c = get_double(d, "kappa_c_mhz", "device");
    r.device.validate();
    return r;
  }
  const YAML::Node t = root["targets"];
  if (!t) throw ConfigError("config: need a 'device' or a 'targets' block");
  InversionTargets it;
  if (!t["qubits"] || !t["qubits"].IsSequence()) throw ConfigError("config: targets.qubits must be a list");
  for (const auto& q : t["qubits"]) {
    QubitTargets qt;
    qt.omega01 = get_double(q, "omega01_mhz", "targets.qubits");
    qt.alpha = get_double(q, "alpha_mhz", "targets.qubits");
    if (q["two_chi_mhz"]) qt.two_chi = get_double(q, "two_chi_mhz", "targets.qubits");
    it.qubits.push_back(qt);
    it.n_g.push_back(get_double(q, "n_g", 0.0));
  }
  if (t["omega_c_mhz"]) it.omega_c = get_double(t, "omega_c_mhz", "targets");
  // inversion.truncation overrides the spectrum used to match 2chi
  const InversionResult inv = invert_parameters(it, truncation(root["inversion"], {30, 10, 12}));
  r.device = inv.device;
  if (t["kappa_c_mhz"]) r.device.kappa_c = get_double(t, "kappa_c_mhz", "targets");
  r.targets = it;
  return r;
}

TruncationSpec truncation(const YAML::Node& root, const TruncationSpec& fallback) {
  const YAML::Node t = root && root["truncation"] ? root["truncation"] : YAML::Node();
  TruncationSpec s;
  s.n_charge = get_int(t, "n_charge", fallback.n_charge);
  s.n_qubit_keep = get_int(t, "n_qubit_keep", fallback.n_qubit_keep);
  s.n_photon = get_int(t, "n_photon", fallback.n_photon);
  s.validate();
  return s;
}

double pulse_detuning(const YAML::Node& root) {
  return get_double(root["pulse"], "delta_cd_mhz", "pulse");
}

PulseSpec pulse_spec(const YAML::Node& root, double omega_c_dressed) {
  const YAML::Node p = root["pulse"];
  if (!p) throw ConfigError("config: missing 'pulse' block");
  PulseSpec s;
  const std::string kind = get_string(p, "kind", "nested_cosine");
  if (kind == "nested_cosine") s.kind = PulseKind::nested_cosine;
  else if (kind == "gaussian") s.kind = PulseKind::gaussian;
  else if (kind == "custom") s.kind = PulseKind::custom;
  else throw ConfigError("config: unknown pulse kind '" + kind + "'");
  s.tau = get_double(p, "tau_ns", "pulse");
  s.t0 = get_double(p, "t0_ns", 0.0);
  if (s.kind == PulseKind::gaussian) s.sigma = get_double(p, "sigma_ns", equal_area_sigma(s.tau));
  if (s.kind == PulseKind::custom) {
    if (!p["samples"]) throw ConfigError("config: custom pulse needs 'samples'");
    for (const auto& x : p["samples"]) s.samples.push_back(as<double>(x, "samples"));
  }
  const double delta = get_double(p, "delta_cd_mhz", "pulse");
  s.omega_d = p["omega_d_mhz"] ? get_double(p, "omega_d_mhz", "pulse") : omega_c_dressed - delta;
  if (p["amplitude_mhz"]) s.amplitude = get_double(p, "amplitude_mhz", "pulse");
  else s.amplitude = 2.0 * std::abs(delta) * std::sqrt(get_double(p, "photons", "pulse"));
  // drag: true selects Delta_D = Delta_cd
  if (p["drag_mhz"]) s.drag = get_double(p, "drag_mhz", "pulse");
  else if (get_bool(p, "drag", false)) s.drag = delta;
  return s;
}

ResponseMode response_mode(const std::string& s) {
  if (s == "quadrature") return ResponseMode::quadrature;
  if (s == "adiabatic1" || s == "adiabatic") return ResponseMode::adiabatic1;
  if (s == "adiabatic2") return ResponseMode::adiabatic2;
  throw ConfigError("config: unknown response mode '" + s + "'");
}

RateModel rate_model(const std::string& s) {
  if (s == "jc") return RateModel::jc;
  if (s == "kerr") return RateModel::kerr;
  if (s == "abinitio") return RateModel::abinitio;
  throw ConfigError("config: unknown rate model '" + s + "'");
}

std::vector<Occupation> occupation_list(const YAML::Node& n, const std::string& where) {
  if (!n || !n.IsSequence()) throw ConfigError("config: " + where + " must be a list of occupations");
  std::vector<Occupation> out;
  for (const auto& o : n) out.push_back(as<std::vector<int>>(o, where));
  return out;
}

std::uint64_t config_hash(const YAML::Node& root) {
  YAML::Emitter em;
  em << root;
  std::uint64_t h = 1469598103934665603ULL;
  for (const char* c = em.c_str(); *c; ++c) {
    h ^= static_cast<unsigned char>(*c);
    h *= 1099511628211ULL;
  }
  return h;
}

YAML::Node with_override(const YAML::Node& root, const std::string& path, double value) {
  YAML::Node copy = YAML::Clone(root);
  YAML::Node cur = copy;
  std::size_t pos = 0;
  while (true) {
    const std::size_t dot = path.find('.', pos);
    const std::string key = path.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    if (key.empty()) throw ConfigError("sweep: bad axis path '" + path + "'");
    const bool index = key.find_first_not_of("0123456789") == std::string::npos;
    if (index && !cur.IsSequence()) throw ConfigError("sweep: axis path '" + path + "' indexes a non-list");
    if (dot == std::string::npos) {
      if (index) cur[std::stoul(key)] = value;
      else cur[key] = value;
      break;
    }
    YAML::Node next = index ? cur[std::stoul(key)] : cur[key];
    if (!next.IsDefined() || next.IsNull()) throw ConfigError("sweep: axis path '" + path + "' not in config");
    cur.reset(next);
    pos = dot + 1;
  }
  return copy;
}

}  // namespace ripkit::cli
