#include "requisite/regulation.hpp"

#include "requisite/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace requisite {

ChannelRate::ChannelRate(std::string label, Count states_per_signal, double signals_per_period,
                         Duration period)
    : label_(std::move(label)),
      states_(std::move(states_per_signal)),
      signals_(signals_per_period),
      period_(period) {
  if (states_ < 0) throw ValidationError("channel '" + label_ + "': negative state count");
  if (!(signals_ > 0.0) || !std::isfinite(signals_)) {
    throw ValidationError("channel '" + label_ + "': signals_per_period must be positive");
  }
  if (!(period_.value > 0.0) || !std::isfinite(period_.value)) {
    throw ValidationError("channel '" + label_ + "': period must be positive");
  }
}

double channel_rate_bits(const ChannelRate& ch) {
  if (ch.states_per_signal() == 0) {
    throw DomainError("channel '" + ch.label() + "' has no states to signal");
  }
  return variety_bits(ch.states_per_signal()) * ch.signals_per_period() / ch.period().value;
}

double requisite_variety_floor(double v_d, double v_r) {
  if (!(v_d >= 0.0) || !(v_r >= 0.0)) throw DomainError("variety rates must be non-negative");
  return std::max(0.0, v_d - v_r);
}

namespace {

double sum_rates(std::span<const ChannelRate> channels, TimeUnit unit) {
  double total = 0.0;
  for (const auto& ch : channels) {
    if (ch.unit() != unit) {
      throw UnitMismatchError("channel '" + ch.label() + "' is per " +
                              std::string(unit_name(ch.unit())) + ", expected per " +
                              std::string(unit_name(unit)));
    }
    total += channel_rate_bits(ch);
  }
  return total;
}

}  // namespace

RegulationVerdict analyze(const RegulationScenario& s) {
  RegulationVerdict v;
  v.total_disturbance = sum_rates(s.disturbances, s.time_unit);
  v.total_regulation = sum_rates(s.regulators, s.time_unit);
  v.outcome_floor = requisite_variety_floor(v.total_disturbance, v.total_regulation);
  v.controllable = v.total_regulation >= v.total_disturbance;
  if (v.total_regulation > 0.0) v.deficit_ratio = v.total_disturbance / v.total_regulation;
  return v;
}

double max_controllable_disturbance(std::span<const ChannelRate> regulators) {
  if (regulators.empty()) return 0.0;
  return sum_rates(regulators, regulators.front().unit());
}

double entropy_balance(std::span<const double> h_d, std::span<const double> h_r) {
  double slack = 0.0;
  for (double h : h_r) {
    if (!(h >= 0.0)) throw DomainError("regulator entropy rates must be non-negative");
    slack += h;
  }
  for (double h : h_d) {
    if (!(h >= 0.0)) throw DomainError("disturbance entropy rates must be non-negative");
    slack -= h;
  }
  return slack;
}

ReconfigBound max_reconfig_period(double h_move_bits, double disturbance_rate,
                                  double safety_margin) {
  if (!(h_move_bits > 0.0)) throw DomainError("h_move must be positive");
  if (!(safety_margin >= 1.0)) throw DomainError("safety margin must be at least 1");
  if (!(disturbance_rate >= 0.0)) throw DomainError("disturbance rate must be non-negative");
  if (disturbance_rate == 0.0) return {};
  return {h_move_bits / (disturbance_rate * safety_margin)};
}

}  // namespace requisite
