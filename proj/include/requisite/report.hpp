#pragma once

// Reports: run metadata plus a list of tables, rendered as an aligned text
// table, CSV, or JSON lines. Rendering is locale independent and a pure
// function of the report.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace requisite {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

struct Cell {
  enum class Style { Plain, Good, Bad };
  std::variant<std::monostate, std::string, bool, std::int64_t, std::uint64_t, double> value;
  int decimals = -1;  // fixed decimals in the text table; -1 for shortest form
  Style style = Style::Plain;

  Cell() = default;
  Cell(std::string s, Style st = Style::Plain) : value(std::move(s)), style(st) {}
  Cell(const char* s) : value(std::string(s)) {}
  Cell(bool b) : value(b) {}
  Cell(int v) : value(static_cast<std::int64_t>(v)) {}
  Cell(std::int64_t v) : value(v) {}
  Cell(std::uint64_t v) : value(v) {}
  Cell(double v, int dec = -1) : value(v), decimals(dec) {}
  static Cell null() { return Cell(); }
};

struct Table {
  std::string request;  // request name
  std::string title;    // table kind, e.g. "verdict"
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct ReportMeta {
  std::string command;
  std::string source;
  std::optional<std::uint64_t> digest;
  std::optional<std::uint64_t> seed;
};

struct Report {
  ReportMeta meta;
  std::vector<Table> tables;
};

enum class Format { Table, Csv, Jsonl };

/// "table", "csv" or "jsonl"; anything else throws std::invalid_argument.
Format parse_format(std::string_view name);

/// Shortest round-tripping decimal form, independent of the C locale.
std::string format_double(double v);

std::string render(const Report& report, Format format, bool color = false);

}  // namespace requisite
