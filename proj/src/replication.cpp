#include "requisite/replication.hpp"

#include "requisite/errors.hpp"

#include <cmath>
#include <cstdint>

namespace requisite {

std::vector<SimMetrics> replicate_serial(const Scenario& scenario, std::uint64_t base_seed,
                                         std::size_t replications) {
  validate(scenario);
  std::vector<SimMetrics> out;
  out.reserve(replications);
  for (std::size_t i = 0; i < replications; ++i) out.push_back(run(scenario, base_seed + i).metrics);
  return out;
}

std::vector<SimMetrics> replicate(const Scenario& scenario, std::uint64_t base_seed,
                                  std::size_t replications) {
  validate(scenario);
  std::vector<SimMetrics> out(replications);
  const auto n = static_cast<std::int64_t>(replications);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        run(scenario, base_seed + static_cast<std::uint64_t>(i)).metrics;
  }
  return out;
}

MetricSummary summarize_values(std::span<const double> values) {
  MetricSummary s;
  if (values.empty()) return s;
  const auto n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / (n - 1.0));
  }
  const double half = 1.96 * s.stddev / std::sqrt(n);
  s.ci_low = s.mean - half;
  s.ci_high = s.mean + half;
  return s;
}

Aggregate summarize(std::span<const SimMetrics> runs) {
  if (runs.empty()) throw DomainError("cannot summarize zero runs");
  Aggregate a;
  a.runs = runs.size();
  std::vector<double> ttfc, frac, succ, dev, avail;
  for (const auto& m : runs) {
    if (m.time_to_first_compromise) {
      ttfc.push_back(*m.time_to_first_compromise);
    } else {
      ++a.ttfc_excluded;
    }
    frac.push_back(m.compromised_fraction);
    succ.push_back(static_cast<double>(m.successful_attacks));
    dev.push_back(static_cast<double>(m.exploits_developed));
    avail.push_back(m.availability);
  }
  a.time_to_first_compromise = summarize_values(ttfc);
  a.compromised_fraction = summarize_values(frac);
  a.successful_attacks = summarize_values(succ);
  a.exploits_developed = summarize_values(dev);
  a.availability = summarize_values(avail);
  a.compromise_probability =
      static_cast<double>(ttfc.size()) / static_cast<double>(runs.size());
  return a;
}

std::string_view sweep_parameter_name(SweepParameter p) {
  switch (p) {
    case SweepParameter::ReconfigPeriod: return "reconfig_period";
    case SweepParameter::PoolSize: return "pool_size";
    case SweepParameter::DetectionProb: return "detection_prob";
  }
  return "?";
}

Scenario with_parameter(Scenario base, SweepParameter parameter, double value) {
  switch (parameter) {
    case SweepParameter::ReconfigPeriod:
      base.defender.policy = ReconfigPolicy::periodic(value);
      break;
    case SweepParameter::PoolSize:
      if (!(value >= 1.0) || value != std::floor(value)) {
        throw ValidationError("pool_size sweep values must be positive integers");
      }
      base.pool_size = static_cast<std::uint64_t>(value);
      break;
    case SweepParameter::DetectionProb:
      base.defender.detection_prob = value;
      break;
  }
  validate(base);
  return base;
}

std::vector<SweepRow> sweep(const Scenario& base, SweepParameter parameter,
                            std::span<const double> values, std::size_t replications,
                            std::uint64_t base_seed) {
  if (values.empty()) throw DomainError("sweep needs at least one value");
  if (replications == 0) throw DomainError("sweep needs at least one replication");
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (double v : values) {
    const Scenario s = with_parameter(base, parameter, v);
    const auto runs = replicate(s, base_seed, replications);
    rows.push_back({v, summarize(runs)});
  }
  return rows;
}

}  // namespace requisite
