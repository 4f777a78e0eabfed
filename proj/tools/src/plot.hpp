#pragma once

#include <filesystem>
#include <string>

#include "table.hpp"

namespace ripkit::cli {

// kind: "auto", "rates", "leakage" or "response". Auto picks by column names.
// Writes an SVG next to `out` and returns its path.
std::filesystem::path emit_plot(const Table& t, const std::string& kind, const std::filesystem::path& out);

std::string detect_plot_kind(const Table& t);

}  // namespace ripkit::cli
