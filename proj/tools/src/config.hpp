#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "ripkit/device_model.hpp"
#include "ripkit/effective_rates.hpp"
#include "ripkit/pulses.hpp"

namespace ripkit::cli {

// Keys carry their units (omega_c_mhz, tau_ns). Every lookup error is a ConfigError.
YAML::Node load_config(const std::filesystem::path& path);

double get_double(const YAML::Node& n, const std::string& key, const std::string& where);
double get_double(const YAML::Node& n, const std::string& key, double fallback);
int get_int(const YAML::Node& n, const std::string& key, int fallback);
std::string get_string(const YAML::Node& n, const std::string& key, const std::string& fallback);
bool get_bool(const YAML::Node& n, const std::string& key, bool fallback);
// Scalar, list or {from, to, step | points} table.
std::vector<double> get_grid(const YAML::Node& n, const std::string& key, const std::string& where);

struct ResolvedDevice {
  DeviceSpec device;
  std::optional<InversionTargets> targets;  // when the device came from targets
};

// `device` block (explicit E_C, E_J, g) or `targets` block (inverted).
ResolvedDevice resolve_device(const YAML::Node& root);
TruncationSpec truncation(const YAML::Node& root, const TruncationSpec& fallback);

// Detuning and carrier: omega_d = omega_c_dressed - delta_cd unless omega_d_mhz is given.
// The amplitude is amplitude_mhz or 2 |delta_cd| sqrt(photons).
PulseSpec pulse_spec(const YAML::Node& root, double omega_c_dressed);
double pulse_detuning(const YAML::Node& root);

ResponseMode response_mode(const std::string& s);
RateModel rate_model(const std::string& s);

std::vector<Occupation> occupation_list(const YAML::Node& n, const std::string& where);

// Stable FNV-1a hash of the canonical YAML emission.
std::uint64_t config_hash(const YAML::Node& root);

// Sets a dotted path such as "targets.qubits.0.alpha_mhz" on a deep copy.
YAML::Node with_override(const YAML::Node& root, const std::string& path, double value);

}  // namespace ripkit::cli
