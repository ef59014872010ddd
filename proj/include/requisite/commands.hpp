#pragma once

// The work behind each CLI subcommand, returning reports instead of printing.

#include "requisite/report.hpp"
#include "requisite/scenario_file.hpp"
#include "requisite/units.hpp"
#include "requisite/worked_examples.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace requisite {

struct RunOptions {
  std::string command = "run";
  std::string source;
  /// Replaces the file seed and every request seed.
  std::optional<std::uint64_t> seed;
  bool sweeps_only = false;
};

/// Executes requests in declaration order. With sweeps_only, non-sweep
/// requests are skipped and a file without sweeps is a ValidationError.
Report run_scenario_file(const ScenarioFile& file, const RunOptions& options);

Report bound_report(double h_move_bits, const Rate& rate, double margin);

struct ExamplesOutcome {
  Report report;
  bool all_pass = false;
};

ExamplesOutcome worked_examples_report(const ExpectedTable& expected, std::string source = "builtin");

/// Overrides parsed from a JSON object keyed by check id, each holding any of
/// "exact", "value", "tolerance", "text". Unlisted ids keep their defaults.
ExpectedTable load_expectations(const std::filesystem::path& path);

}  // namespace requisite
