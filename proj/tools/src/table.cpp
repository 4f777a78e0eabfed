#include "table.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "ripkit/errors.hpp"

namespace ripkit::cli {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("Table::add: column count mismatch in " + name);
  rows.push_back(std::move(row));
}

int Table::column(const std::string& c) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == c) return static_cast<int>(i);
  return -1;
}

std::vector<double> Table::numbers(const std::string& c) const {
  const int k = column(c);
  if (k < 0) throw ConfigError("table " + name + " has no column " + c);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) {
    const Cell& x = r[static_cast<std::size_t>(k)];
    if (auto* d = std::get_if<double>(&x)) out.push_back(*d);
    else if (auto* i = std::get_if<long long>(&x)) out.push_back(static_cast<double>(*i));
    else throw ConfigError("column " + c + " is not numeric");
  }
  return out;
}

std::string format_cell(const Cell& c) {
  if (auto* d = std::get_if<double>(&c)) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", *d);
    return buf;
  }
  if (auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

void write_csv(const Table& t, std::ostream& os, bool header) {
  if (header) {
    os << kSchemaHeader << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
  }
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_cell(r[i]);
    os << '\n';
  }
}

void write_json(const Table& t, std::ostream& os) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json o;
    for (std::size_t i = 0; i < r.size(); ++i)
      std::visit([&](const auto& v) { o[t.columns[i]] = v; }, r[i]);
    rows.push_back(std::move(o));
  }
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["table"] = t.name;
  doc["rows"] = std::move(rows);
  os << doc.dump(2) << '\n';
}

std::filesystem::path write_table(const Table& t, const std::filesystem::path& dir, Format f) {
  std::filesystem::create_directories(dir);
  const auto path = dir / (t.name + (f == Format::csv ? ".csv" : ".json"));
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path.string());
  if (f == Format::csv) write_csv(t, os);
  else write_json(t, os);
  return path;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

Cell parse_cell(const std::string& s) {
  double d = 0.0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, d);
  if (ec == std::errc() && p == end && !s.empty()) return d;
  if (s == "nan" || s == "-nan") return std::numeric_limits<double>::quiet_NaN();
  return s;
}

}  // namespace

Table read_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read " + path.string());
  Table t;
  t.name = path.stem().string();
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto cells = split_csv_line(line);
    if (!have_header) {
      t.columns = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != t.columns.size()) throw ConfigError("malformed CSV row in " + path.string());
    std::vector<Cell> row;
    for (const auto& c : cells) row.push_back(parse_cell(c));
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw ConfigError("empty CSV " + path.string());
  return t;
}

}  // namespace ripkit::cli
