#pragma once

#include "requisite/sim.hpp"

#include <random>

namespace requisite::testing {

/// A valid scenario with every knob drawn at random.
inline Scenario random_scenario(std::mt19937_64& gen) {
  auto uni = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); };
  auto coin = [&](double p) { return std::bernoulli_distribution(p)(gen); };
  auto dist = [&](double lo, double hi) {
    return coin(0.5) ? DurationDist::constant(uni(lo, hi)) : DurationDist::exponential(uni(lo + 0.01, hi));
  };

  Scenario s;
  s.horizon = uni(50.0, 500.0);
  s.pool_size = coin(0.3) ? std::uniform_int_distribution<std::uint64_t>(2, 8)(gen) : 1;
  s.validity = coin(0.5) ? ExploitValidity::StrictEpoch : ExploitValidity::ValueMatch;

  auto& a = s.attacker;
  a.scan_interval = uni(0.5, 10.0);
  a.scan_timing = coin(0.5) ? ScanTiming::Fixed : ScanTiming::Exponential;
  a.exploit_dev_time = dist(0.1, 20.0);
  a.retry = coin(0.8);
  a.mismatch_success_prob = coin(0.5) ? 0.0 : uni(0.0, 0.3);
  a.bypass_prob = coin(0.5) ? 0.0 : uni(0.0, 0.1);
  a.continue_while_compromised = coin(0.3);

  auto& d = s.defender;
  const auto m = std::uniform_int_distribution<std::uint64_t>(1, 32)(gen);
  d.space = ConfigSpace(m);
  if (coin(0.2)) a.offline_target = std::uniform_int_distribution<std::uint64_t>(0, m - 1)(gen);
  switch (std::uniform_int_distribution<int>(0, 3)(gen)) {
    case 0: d.policy = ReconfigPolicy::stationary(); break;
    case 1: d.policy = ReconfigPolicy::periodic(uni(1.0, 30.0)); break;
    case 2: d.policy = ReconfigPolicy::poly_periodic({uni(1.0, 10.0), uni(10.5, 30.0)}); break;
    default: d.policy = ReconfigPolicy::pseudo_random(ExponentialIntervals{uni(1.0, 20.0)}); break;
  }
  d.draw_mode = coin(0.8) ? DrawMode::ForcedMove : DrawMode::Uniform;
  d.detection_prob = uni(0.0, 1.0);
  d.detection_delay = dist(0.0, 10.0);
  d.reset_latency = uni(0.1, 5.0);
  d.persistence_prob = coin(0.7) ? 0.0 : uni(0.0, 1.0);
  if (coin(0.3)) d.scheduled_reset_period = uni(5.0, 50.0);
  return s;
}

}  // namespace requisite::testing
