#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace ripkit::cli {

inline constexpr const char* kSchemaHeader = "# ripkit-schema=1";

using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::string name;  // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
  int column(const std::string& c) const;  // -1 when absent
  std::vector<double> numbers(const std::string& c) const;
};

enum class Format { csv, json };

// Fixed formatting so identical inputs give byte-identical files.
std::string format_cell(const Cell& c);
void write_csv(const Table& t, std::ostream& os, bool header = true);
void write_json(const Table& t, std::ostream& os);
std::filesystem::path write_table(const Table& t, const std::filesystem::path& dir, Format f);

// Reads a CSV written by write_csv (comment lines skipped, all cells kept as text
// unless they parse as numbers).
Table read_csv(const std::filesystem::path& path);

}  // namespace ripkit::cli
