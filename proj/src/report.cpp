#include "requisite/report.hpp"

#include <fmt/color.h>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace requisite {

namespace {

std::string digest_hex(std::uint64_t d) { return fmt::format("{:016x}", d); }

std::string cell_text(const Cell& c, bool table) {
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return table ? "-" : "";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          if (table && c.decimals >= 0 && std::isfinite(v)) return fmt::format("{:.{}f}", v, c.decimals);
          if (table && v == std::trunc(v) && std::abs(v) < 1e15) return fmt::format("{:.0f}", v);
          return format_double(v);
        } else {
          return std::to_string(v);
        }
      },
      c.value);
}

nlohmann::json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return format_double(v);
          return v;
        } else {
          return v;
        }
      },
      c.value);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string render_table(const Report& r, bool color) {
  std::string out = fmt::format("requisite {}  command: {}", kToolVersion, r.meta.command);
  if (!r.meta.source.empty()) out += fmt::format("  source: {}", r.meta.source);
  if (r.meta.digest) out += fmt::format("  digest: {}", digest_hex(*r.meta.digest));
  if (r.meta.seed) out += fmt::format("  seed: {}", *r.meta.seed);
  out += '\n';

  for (const auto& t : r.tables) {
    const auto heading = fmt::format("{} [{}]", t.request, t.title);
    out += '\n';
    out += color ? fmt::format(fmt::emphasis::bold, "{}", heading) : heading;
    out += '\n';

    std::vector<std::size_t> width(t.columns.size());
    std::vector<std::vector<std::string>> text;
    for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
    for (const auto& row : t.rows) {
      auto& line = text.emplace_back();
      for (std::size_t i = 0; i < row.size(); ++i) {
        line.push_back(cell_text(row[i], true));
        width[i] = std::max(width[i], line.back().size());
      }
    }
    auto numeric = [](const Cell& c) {
      return !std::holds_alternative<std::string>(c.value) && !std::holds_alternative<bool>(c.value);
    };

    std::string header;
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      const bool right = !t.rows.empty() && numeric(t.rows.front()[i]);
      header += right ? fmt::format("  {:>{}}", t.columns[i], width[i])
                      : fmt::format("  {:<{}}", t.columns[i], width[i]);
    }
    while (!header.empty() && header.back() == ' ') header.pop_back();
    out += (color ? fmt::format(fmt::emphasis::underline, "{}", header) : header) + '\n';

    for (std::size_t r_i = 0; r_i < t.rows.size(); ++r_i) {
      std::string line;
      for (std::size_t i = 0; i < t.rows[r_i].size(); ++i) {
        const auto& cell = t.rows[r_i][i];
        auto padded = numeric(cell) ? fmt::format("{:>{}}", text[r_i][i], width[i])
                                    : fmt::format("{:<{}}", text[r_i][i], width[i]);
        if (color && cell.style != Cell::Style::Plain) {
          const auto fg = cell.style == Cell::Style::Good ? fmt::color::green : fmt::color::red;
          padded = fmt::format(fmt::fg(fg), "{}", padded);
        }
        line += "  " + padded;
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out += line + '\n';
    }
  }
  return out;
}

std::string render_csv(const Report& r) {
  std::string out;
  bool first = true;
  for (const auto& t : r.tables) {
    if (!first) out += '\n';
    first = false;
    out += "request,table";
    for (const auto& c : t.columns) out += ',' + csv_escape(c);
    out += '\n';
    for (const auto& row : t.rows) {
      out += csv_escape(t.request) + ',' + csv_escape(t.title);
      for (const auto& cell : row) out += ',' + csv_escape(cell_text(cell, false));
      out += '\n';
    }
  }
  return out;
}

std::string render_jsonl(const Report& r) {
  nlohmann::ordered_json meta;
  meta["record"] = "meta";
  meta["tool"] = "requisite";
  meta["tool_version"] = kToolVersion;
  meta["schema_version"] = kReportSchemaVersion;
  meta["command"] = r.meta.command;
  meta["source"] = r.meta.source;
  meta["digest"] = r.meta.digest ? nlohmann::ordered_json(digest_hex(*r.meta.digest)) : nlohmann::ordered_json();
  meta["seed"] = r.meta.seed ? nlohmann::ordered_json(*r.meta.seed) : nlohmann::ordered_json();
  std::string out = meta.dump() + '\n';
  for (const auto& t : r.tables) {
    for (const auto& row : t.rows) {
      nlohmann::ordered_json j;
      j["record"] = "row";
      j["request"] = t.request;
      j["table"] = t.title;
      for (std::size_t i = 0; i < row.size(); ++i) j[t.columns[i]] = cell_json(row[i]);
      out += j.dump() + '\n';
    }
  }
  return out;
}

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "table") return Format::Table;
  if (name == "csv") return Format::Csv;
  if (name == "jsonl") return Format::Jsonl;
  throw std::invalid_argument("unknown format '" + std::string(name) + "'");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string render(const Report& report, Format format, bool color) {
  switch (format) {
    case Format::Table: return render_table(report, color);
    case Format::Csv: return render_csv(report);
    case Format::Jsonl: return render_jsonl(report);
  }
  return {};
}

}  // namespace requisite
