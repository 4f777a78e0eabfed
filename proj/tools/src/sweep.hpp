#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>

#include <yaml-cpp/yaml.h>

#include "table.hpp"

namespace ripkit::cli {

struct SweepOptions {
  std::filesystem::path out;
  int jobs = 1;
  std::uint64_t seed = 0;
  Format format = Format::csv;
  std::optional<std::filesystem::path> cache_dir;
};

struct SweepSummary {
  std::size_t points = 0;
  std::size_t computed = 0;
  std::size_t skipped = 0;  // already complete in the manifest
  std::size_t failed = 0;
};

// Grid points run on a bounded worker pool; one collector thread writes each
// finished point to out/points/ and updates out/manifest.json. The merged
// tables are rebuilt in point order, so the output does not depend on --jobs.
SweepSummary run_sweep(const YAML::Node& root, const SweepOptions& opts);

}  // namespace ripkit::cli
