#pragma once

// Channel-rate arithmetic and the Law of Requisite Variety:
// outcome variety V_O >= V_D - V_R, with all varieties as rates in bits per
// time unit.

#include "requisite/units.hpp"
#include "requisite/variety.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace requisite {

/// A communication channel that selects one of `states_per_signal` states,
/// `signals_per_period` times in every `period`.
class ChannelRate {
 public:
  ChannelRate(std::string label, Count states_per_signal, double signals_per_period,
              Duration period);

  const std::string& label() const { return label_; }
  const Count& states_per_signal() const { return states_; }
  double signals_per_period() const { return signals_; }
  const Duration& period() const { return period_; }
  TimeUnit unit() const { return period_.unit; }

 private:
  std::string label_;
  Count states_;
  double signals_;
  Duration period_;
};

/// log2(states_per_signal) * signals_per_period / period, in bits per
/// period unit.
double channel_rate_bits(const ChannelRate& ch);

struct RegulationScenario {
  std::vector<ChannelRate> disturbances;
  std::vector<ChannelRate> regulators;
  TimeUnit time_unit = TimeUnit::Second;
};

struct RegulationVerdict {
  double total_disturbance = 0.0;  // bits per time unit
  double total_regulation = 0.0;
  double outcome_floor = 0.0;
  bool controllable = true;
  std::optional<double> deficit_ratio;  // disturbance / regulation
};

/// max(0, v_d - v_r): the least outcome variety a regulator of capacity v_r
/// can leave against disturbance v_d.
double requisite_variety_floor(double v_d, double v_r);

/// Sums member rates and applies the floor. All members must share
/// `s.time_unit`; otherwise UnitMismatchError.
RegulationVerdict analyze(const RegulationScenario& s);

/// Largest total disturbance rate the regulators can hold to a zero floor.
/// An empty list yields 0.
double max_controllable_disturbance(std::span<const ChannelRate> regulators);

/// sum(h_r) - sum(h_d). The system is within control iff the slack is >= 0.
double entropy_balance(std::span<const double> h_d, std::span<const double> h_r);

/// Longest reconfiguration period, in the disturbance rate's time unit.
struct ReconfigBound {
  std::optional<double> period;  // empty: unbounded

  bool unbounded() const { return !period.has_value(); }
};

/// A moving target that injects `h_move_bits` of fresh configuration entropy
/// every reconfiguration has entropy rate h_move / T. Holding that rate at
/// `safety_margin` times the disturbance rate gives
///   T_max = h_move / (disturbance_rate * safety_margin).
/// Zero disturbance leaves the period unbounded.
ReconfigBound max_reconfig_period(double h_move_bits, double disturbance_rate,
                                  double safety_margin);

}  // namespace requisite
