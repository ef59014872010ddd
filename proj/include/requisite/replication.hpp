#pragma once

// Independent replications of a scenario, their aggregate statistics, and
// one-parameter sweeps. Replication i always uses seed base_seed + i, so the
// parallel and serial runners produce identical result vectors.

#include "requisite/sim.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace requisite {

/// Serial reference runner.
std::vector<SimMetrics> replicate_serial(const Scenario& scenario, std::uint64_t base_seed,
                                         std::size_t replications);

/// OpenMP runner; results are stored by replication index.
std::vector<SimMetrics> replicate(const Scenario& scenario, std::uint64_t base_seed,
                                  std::size_t replications);

struct MetricSummary {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for a single value
  double ci_low = 0.0;  // mean -/+ 1.96 * stddev / sqrt(n)
  double ci_high = 0.0;
};

MetricSummary summarize_values(std::span<const double> values);

struct Aggregate {
  std::size_t runs = 0;
  MetricSummary time_to_first_compromise;
  std::size_t ttfc_excluded = 0;  // runs with no compromise
  MetricSummary compromised_fraction;
  MetricSummary successful_attacks;
  MetricSummary exploits_developed;
  MetricSummary availability;
  double compromise_probability = 0.0;  // share of runs with any compromise
};

/// Folds runs in the order given. Throws DomainError on an empty list.
Aggregate summarize(std::span<const SimMetrics> runs);

enum class SweepParameter { ReconfigPeriod, PoolSize, DetectionProb };

std::string_view sweep_parameter_name(SweepParameter p);

/// `base` with one parameter replaced. ReconfigPeriod installs a periodic
/// policy with that period.
Scenario with_parameter(Scenario base, SweepParameter parameter, double value);

struct SweepRow {
  double value;
  Aggregate aggregate;
};

std::vector<SweepRow> sweep(const Scenario& base, SweepParameter parameter,
                            std::span<const double> values, std::size_t replications,
                            std::uint64_t base_seed);

}  // namespace requisite
