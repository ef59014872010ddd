#include "requisite/units.hpp"

#include "requisite/errors.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <utility>

namespace requisite {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view text, std::string_view context) {
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ValidationError("malformed number '" + std::string(text) + "' in '" +
                          std::string(context) + "'");
  }
  return value;
}

}  // namespace

std::string_view unit_name(TimeUnit unit) {
  switch (unit) {
    case TimeUnit::Second: return "second";
    case TimeUnit::Minute: return "minute";
    case TimeUnit::Hour: return "hour";
    case TimeUnit::Day: return "day";
    case TimeUnit::Unit: return "unit";
  }
  return "unit";
}

TimeUnit parse_unit(std::string_view label) {
  static constexpr std::array<std::pair<std::string_view, TimeUnit>, 18> kLabels{{
      {"s", TimeUnit::Second},      {"sec", TimeUnit::Second},   {"second", TimeUnit::Second},
      {"seconds", TimeUnit::Second}, {"min", TimeUnit::Minute},  {"minute", TimeUnit::Minute},
      {"minutes", TimeUnit::Minute}, {"h", TimeUnit::Hour},      {"hr", TimeUnit::Hour},
      {"hour", TimeUnit::Hour},      {"hours", TimeUnit::Hour},  {"d", TimeUnit::Day},
      {"day", TimeUnit::Day},        {"days", TimeUnit::Day},    {"unit", TimeUnit::Unit},
      {"units", TimeUnit::Unit},     {"tick", TimeUnit::Unit},   {"ticks", TimeUnit::Unit},
  }};
  label = trim(label);
  for (const auto& [name, unit] : kLabels) {
    if (name == label) return unit;
  }
  throw UnitError("unknown time unit '" + std::string(label) + "'");
}

Duration parse_duration(std::string_view text) {
  const auto body = trim(text);
  const auto split = body.find_first_of(" \t");
  if (split == std::string_view::npos) {
    throw UnitError("duration '" + std::string(body) + "' has no unit label");
  }
  Duration d;
  d.value = parse_number(body.substr(0, split), body);
  d.unit = parse_unit(body.substr(split + 1));
  return d;
}

Rate parse_rate(std::string_view text) {
  const auto body = trim(text);
  const auto slash = body.find('/');
  if (slash == std::string_view::npos) {
    throw UnitError("rate '" + std::string(body) + "' has no '/<unit>' suffix");
  }
  Rate r;
  r.value = parse_number(body.substr(0, slash), body);
  r.unit = parse_unit(body.substr(slash + 1));
  return r;
}

double value_in(const Duration& d, TimeUnit expected, std::string_view what) {
  if (d.unit != expected) {
    throw UnitMismatchError(std::string(what) + " is in " + std::string(unit_name(d.unit)) +
                            "s but the scenario uses " + std::string(unit_name(expected)) + "s");
  }
  return d.value;
}

}  // namespace requisite
