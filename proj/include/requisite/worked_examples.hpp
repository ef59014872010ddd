#pragma once

// The classic variety and regulation examples, recomputed by the library and
// compared against a table of expected values. Counts are compared exactly,
// bit rates within a tolerance, verdicts as text.

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace requisite {

struct Expectation {
  std::optional<std::string> exact;  // decimal integer
  std::optional<double> value;
  double tolerance = 0.0;
  std::optional<std::string> text;
};

/// Keyed by check id, in report order.
using ExpectedTable = std::map<std::string, Expectation>;

/// Ids in report order.
const std::vector<std::string>& worked_example_ids();

ExpectedTable default_expectations();

struct ExampleCheck {
  std::string id;
  std::string description;
  std::string computed;
  std::string expected;
  bool pass = false;
};

/// Runs every check. A check absent from `expected` fails.
std::vector<ExampleCheck> run_worked_examples(const ExpectedTable& expected);

}  // namespace requisite
