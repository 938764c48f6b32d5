#pragma once

// Column-ordered result tables with CSV and JSON-lines renderers.

#include <cstdint>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "newsgame/config.hpp"
#include "newsgame/errors.hpp"

namespace newsgame {

using Cell = std::variant<double, std::int64_t, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw DomainError("row width does not match table columns");
    rows.push_back(std::move(row));
  }
  std::size_t column(const std::string& name) const {
    for (std::size_t j = 0; j < columns.size(); ++j)
      if (columns[j] == name) return j;
    throw DomainError("no column named " + name);
  }
};

enum class OutputFormat { csv, jsonl };

/// 17 significant digits, enough to re-parse to the same double.
inline std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace detail {

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string cell_text(const Cell& c) {
  struct {
    std::string operator()(double v) const { return format_real(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
    std::string operator()(const std::string& v) const { return csv_escape(v); }
  } visit;
  return std::visit(visit, c);
}

inline nlohmann::ordered_json cell_json(const Cell& c) {
  return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, c);
}

}  // namespace detail

inline void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t j = 0; j < t.columns.size(); ++j)
    os << (j ? "," : "") << detail::csv_escape(t.columns[j]);
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << detail::cell_text(row[j]);
    os << '\n';
  }
}

inline void write_jsonl(std::ostream& os, const Table& t) {
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t j = 0; j < row.size(); ++j) obj[t.columns[j]] = detail::cell_json(row[j]);
    os << obj.dump() << '\n';
  }
}

inline void write_table(std::ostream& os, const Table& t, OutputFormat f) {
  if (f == OutputFormat::csv) write_csv(os, t);
  else write_jsonl(os, t);
}

/// Parsed CSV: header plus raw string fields.
struct CsvData {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t j = 0; j < header.size(); ++j)
      if (header[j] == name) return j;
    throw ConfigError(name, "no such column");
  }
  double real(std::size_t row, const std::string& name) const {
    return detail::parse_real(name, rows.at(row).at(column(name)));
  }
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t j = 0; j < line.size(); ++j) {
    const char c = line[j];
    if (quoted) {
      if (c == '"' && j + 1 < line.size() && line[j + 1] == '"') {
        out.back() += '"';
        ++j;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

}  // namespace detail

inline CsvData read_csv(std::istream& in) {
  CsvData d;
  std::string line;
  if (!std::getline(in, line)) return d;
  d.header = detail::split_csv_line(line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = detail::split_csv_line(line);
    if (fields.size() != d.header.size())
      throw ConfigError("csv row " + std::to_string(d.rows.size() + 1), "wrong number of fields");
    d.rows.push_back(std::move(fields));
  }
  return d;
}

inline CsvData read_csv(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}

}  // namespace newsgame
