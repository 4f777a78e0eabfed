#pragma once

#include <filesystem>
#include <string>

#include "ripkit/device_model.hpp"

namespace ripkit {

void save_system(const SystemOperators& sys, const std::filesystem::path& path);
SystemOperators load_system(const std::filesystem::path& path);

// File name derived from content_hash(device, trunc).
std::string cache_file_name(const DeviceSpec& device, const TruncationSpec& trunc);

// Loads from `dir` when a matching entry exists, otherwise assembles and stores.
SystemOperators cached_assemble(const DeviceSpec& device, const TruncationSpec& trunc,
                                const std::filesystem::path& dir);

}  // namespace ripkit
