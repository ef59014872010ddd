#pragma once

// Time units and unit-tagged durations. Quantities in different units are
// never converted implicitly; combining them is an error.

#include <string>
#include <string_view>

namespace requisite {

enum class TimeUnit { Second, Minute, Hour, Day, Unit };

/// Canonical label: "second", "minute", "hour", "day", "unit".
std::string_view unit_name(TimeUnit unit);

/// Accepts canonical labels, plurals, and the abbreviations s, sec, min, h,
/// hr, d. Throws UnitError on anything else.
TimeUnit parse_unit(std::string_view label);

struct Duration {
  double value = 0.0;
  TimeUnit unit = TimeUnit::Unit;

  friend bool operator==(const Duration&, const Duration&) = default;
};

/// "<number> <unit>", e.g. "5 s" or "24 hour". A bare number is a UnitError.
Duration parse_duration(std::string_view text);

/// "<number>/<unit>", e.g. "2/hour": a per-time-unit rate.
struct Rate {
  double value = 0.0;
  TimeUnit unit = TimeUnit::Unit;
};
Rate parse_rate(std::string_view text);

/// Value of `d` in `expected`, throwing UnitMismatchError if the units differ.
double value_in(const Duration& d, TimeUnit expected, std::string_view what);

}  // namespace requisite
