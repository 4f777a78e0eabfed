#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "table.hpp"

namespace ripkit::cli {

struct RunContext {
  std::uint64_t seed = 0;
  int jobs = 1;
  std::optional<std::filesystem::path> cache_dir;
  std::vector<std::string>* warnings = nullptr;  // collected for stderr / manifest
};

// Names accepted by run_command (and by sweep.task).
const std::vector<std::string>& command_names();
bool is_sweepable(const std::string& name);

std::vector<Table> run_command(const std::string& name, const YAML::Node& root, const RunContext& ctx);

std::string occupation_label(const std::vector<int>& occ);

}  // namespace ripkit::cli
