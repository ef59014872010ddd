#pragma once

// Scenario files: a JSON document listing analysis requests and simulation
// scenarios. Every duration is a string carrying its unit ("10 hour"), every
// rate a "<number>/<unit>" string. Unknown keys are rejected with their path.
// The published schema lives in docs/schema/scenario.schema.json.

#include "requisite/errors.hpp"
#include "requisite/regulation.hpp"
#include "requisite/replication.hpp"
#include "requisite/sim.hpp"
#include "requisite/variety.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace requisite {

inline constexpr int kScenarioSchemaVersion = 1;

/// The file could not be opened or read.
class FileError : public Error {
 public:
  using Error::Error;
};

/// The file is not well-formed JSON.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// The document is JSON but does not match the scenario schema.
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& message)
      : Error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct VarietyRequest {
  std::string name;
  std::vector<std::string> symbols;
  std::size_t length = 1;
  std::optional<int> max_step;  // |successor - predecessor| bound on symbol indices
};

struct ComponentsRequest {
  std::string name;
  std::vector<Count> counts;
};

struct EntropyRequest {
  std::string name;
  std::vector<double> probabilities;
};

struct RegulationRequest {
  std::string name;
  RegulationScenario scenario;
};

struct BoundRequest {
  std::string name;
  double h_move_bits = 0.0;
  Rate rate;
  double margin = 1.0;
};

struct SimulationRequest {
  std::string name;
  TimeUnit time_unit = TimeUnit::Unit;
  Scenario scenario;
  std::size_t replications = 1;
  std::optional<std::uint64_t> seed;
};

struct SweepRequest {
  std::string name;
  TimeUnit time_unit = TimeUnit::Unit;
  Scenario scenario;
  SweepParameter parameter = SweepParameter::ReconfigPeriod;
  std::vector<double> values;
  std::size_t replications = 1;
  std::optional<std::uint64_t> seed;
};

using Request = std::variant<VarietyRequest, ComponentsRequest, EntropyRequest, RegulationRequest,
                             BoundRequest, SimulationRequest, SweepRequest>;

std::string_view request_type(const Request& r);
const std::string& request_name(const Request& r);

struct ScenarioFile {
  int schema_version = kScenarioSchemaVersion;
  std::uint64_t seed = 0;
  std::vector<Request> requests;
  std::uint64_t digest = 0;  // FNV-1a of the raw bytes
};

/// Parses and validates a document. `source` names it in diagnostics.
ScenarioFile parse_scenario_text(std::string_view text, std::string_view source = "<input>");

/// Reads and parses a file; FileError if it cannot be read.
ScenarioFile parse_scenario(const std::filesystem::path& path);

}  // namespace requisite
