#include "requisite/mtd_process.hpp"

#include "requisite/errors.hpp"
#include "requisite/rng.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace requisite {

namespace {

constexpr double kTimeTolerance = 1e-9;

bool same_time(double a, double b) {
  return std::abs(a - b) <= kTimeTolerance * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

ConfigId draw_next(RandomStream& rng, const ConfigSpace& space, ConfigId current, DrawMode mode) {
  const std::uint64_t m = space.size();
  if (mode == DrawMode::Uniform || m == 1) return rng.below(m);
  const ConfigId pick = rng.below(m - 1);
  return pick >= current ? pick + 1 : pick;
}

std::vector<double> event_times(const ReconfigPolicy& policy, double horizon, std::uint64_t seed) {
  std::vector<double> times;
  const auto& v = policy.variant();
  if (const auto* p = std::get_if<ReconfigPolicy::Periodic>(&v)) {
    for (std::uint64_t k = 1; static_cast<double>(k) * p->period <= horizon; ++k) {
      times.push_back(static_cast<double>(k) * p->period);
    }
  } else if (const auto* pp = std::get_if<ReconfigPolicy::PolyPeriodic>(&v)) {
    for (double period : pp->periods) {
      for (std::uint64_t k = 1; static_cast<double>(k) * period <= horizon; ++k) {
        times.push_back(static_cast<double>(k) * period);
      }
    }
    std::sort(times.begin(), times.end());
    std::vector<double> merged;
    for (double t : times) {
      if (merged.empty() || !same_time(merged.back(), t)) merged.push_back(t);
    }
    times = std::move(merged);
  } else if (const auto* pr = std::get_if<ReconfigPolicy::PseudoRandom>(&v)) {
    RandomStream gaps(seed, "trajectory.gaps");
    double t = 0.0;
    while (true) {
      double gap = 0.0;
      if (const auto* e = std::get_if<ExponentialIntervals>(&pr->intervals)) {
        gap = gaps.exponential(e->mean);
      } else {
        const auto& u = std::get<UniformIntervals>(pr->intervals);
        gap = u.low + (u.high - u.low) * gaps.uniform();
      }
      const double next = t + gap;
      if (!(next > t) || next > horizon) break;
      t = next;
      times.push_back(t);
    }
  }
  return times;
}

// Smallest shift s (in events) such that the event pattern repeats with
// period P = t[s] - t[0]. With `match_configs` the configurations must repeat
// too, including the origin.
std::optional<double> repeating_period(const ConfigTrajectory& traj, bool match_configs) {
  const auto ev = traj.events();
  const std::size_t n = ev.size();
  for (std::size_t s = 1; 2 * s <= n; ++s) {
    const double period = ev[s].time - ev[0].time;
    if (!(period > 0.0)) continue;
    if (ev[0].time > period && !same_time(ev[0].time, period)) continue;
    if (match_configs && traj.origin() != ev[s - 1].config) continue;
    bool ok = true;
    for (std::size_t i = 0; i + s < n && ok; ++i) {
      ok = same_time(ev[i + s].time - ev[i].time, period) &&
           (!match_configs || ev[i + s].config == ev[i].config);
    }
    if (ok) return period;
  }
  return std::nullopt;
}

}  // namespace

ConfigSpace::ConfigSpace(std::uint64_t size)
    : ConfigSpace(size, size == 0 ? 0.0 : std::log2(static_cast<double>(size))) {}

ConfigSpace::ConfigSpace(std::uint64_t size, double per_move_entropy)
    : size_(size), per_move_entropy_(per_move_entropy) {
  if (size_ == 0) throw ValidationError("configuration space must have at least one member");
  if (!(per_move_entropy_ >= 0.0) ||
      per_move_entropy_ > std::log2(static_cast<double>(size_)) + 1e-9) {
    throw ValidationError("per-move entropy must lie in [0, log2(size)]");
  }
}

double mean_interval(const IntervalDistribution& d) {
  if (const auto* e = std::get_if<ExponentialIntervals>(&d)) return e->mean;
  const auto& u = std::get<UniformIntervals>(d);
  return 0.5 * (u.low + u.high);
}

std::string_view process_kind_name(ProcessKind kind) {
  switch (kind) {
    case ProcessKind::Stationary: return "stationary";
    case ProcessKind::Cyclostationary: return "cyclostationary";
    case ProcessKind::PolyCyclostationary: return "poly-cyclostationary";
    case ProcessKind::NonStationary: return "non-stationary";
  }
  return "non-stationary";
}

ReconfigPolicy ReconfigPolicy::stationary() { return ReconfigPolicy(Stationary{}); }

ReconfigPolicy ReconfigPolicy::periodic(double period) {
  if (!positive_finite(period)) throw ValidationError("reconfiguration period must be positive");
  return ReconfigPolicy(Periodic{period});
}

ReconfigPolicy ReconfigPolicy::poly_periodic(std::vector<double> periods) {
  std::set<double> distinct;
  for (double p : periods) {
    if (!positive_finite(p)) throw ValidationError("reconfiguration period must be positive");
    distinct.insert(p);
  }
  if (distinct.size() < 2) throw ValidationError("poly-periodic policy needs two distinct periods");
  return ReconfigPolicy(PolyPeriodic{std::move(periods)});
}

ReconfigPolicy ReconfigPolicy::pseudo_random(IntervalDistribution intervals) {
  if (const auto* e = std::get_if<ExponentialIntervals>(&intervals)) {
    if (!positive_finite(e->mean)) throw ValidationError("mean interval must be positive");
  } else {
    const auto& u = std::get<UniformIntervals>(intervals);
    if (!positive_finite(u.low) || !std::isfinite(u.high) || u.high < u.low) {
      throw ValidationError("uniform intervals need 0 < low <= high");
    }
  }
  return ReconfigPolicy(PseudoRandom{intervals});
}

ProcessKind classify(const ReconfigPolicy& policy) {
  struct Visitor {
    ProcessKind operator()(const ReconfigPolicy::Stationary&) const { return ProcessKind::Stationary; }
    ProcessKind operator()(const ReconfigPolicy::Periodic&) const { return ProcessKind::Cyclostationary; }
    ProcessKind operator()(const ReconfigPolicy::PolyPeriodic&) const {
      return ProcessKind::PolyCyclostationary;
    }
    ProcessKind operator()(const ReconfigPolicy::PseudoRandom&) const {
      return ProcessKind::NonStationary;
    }
  };
  return std::visit(Visitor{}, policy.variant());
}

bool belongs_to(ProcessKind kind, ProcessKind outer) {
  return static_cast<int>(kind) <= static_cast<int>(outer);
}

ConfigTrajectory::ConfigTrajectory(ConfigId origin, double horizon,
                                   std::vector<ReconfigEvent> events)
    : origin_(origin), horizon_(horizon), events_(std::move(events)) {
  if (!positive_finite(horizon_)) throw ValidationError("trajectory horizon must be positive");
  double last = 0.0;
  for (std::size_t i = 0; i < events_.size(); ++i) {
    const double t = events_[i].time;
    if (!(t >= 0.0) || t > horizon_) throw ValidationError("trajectory event outside [0, horizon]");
    if (i > 0 && !(t > last)) throw ValidationError("trajectory event times must strictly increase");
    last = t;
  }
}

std::size_t ConfigTrajectory::epoch_at(double t) const {
  const auto it = std::upper_bound(events_.begin(), events_.end(), t,
                                   [](double value, const ReconfigEvent& e) { return value < e.time; });
  return static_cast<std::size_t>(it - events_.begin());
}

ConfigId ConfigTrajectory::config_at(double t) const {
  const std::size_t epoch = epoch_at(t);
  return epoch == 0 ? origin_ : events_[epoch - 1].config;
}

ConfigTrajectory generate_trajectory(const ReconfigPolicy& policy, const ConfigSpace& space,
                                     double horizon, std::uint64_t seed, DrawMode mode) {
  if (!positive_finite(horizon)) throw DomainError("trajectory horizon must be positive");
  RandomStream origin_draw(seed, "trajectory.origin");
  RandomStream draws(seed, "trajectory.draws");
  const ConfigId origin = origin_draw.below(space.size());

  std::vector<ReconfigEvent> events;
  ConfigId current = origin;
  for (double t : event_times(policy, horizon, seed)) {
    current = draw_next(draws, space, current, mode);
    events.push_back({t, current});
  }
  return ConfigTrajectory(origin, horizon, std::move(events));
}

ConfigTrajectory interleave(std::span<const ConfigTrajectory> components, double slot) {
  if (components.empty()) throw DomainError("nothing to interleave");
  if (!positive_finite(slot)) throw DomainError("interleave slot must be positive");
  const double horizon = components.front().horizon();
  for (const auto& c : components) {
    if (c.horizon() != horizon) throw DomainError("interleaved components must share a horizon");
  }
  const std::size_t k = components.size();

  // Candidate change points: slot boundaries and every component event.
  std::vector<std::pair<double, std::uint64_t>> candidates;  // (time, slot index)
  for (std::uint64_t j = 1; static_cast<double>(j) * slot <= horizon; ++j) {
    candidates.emplace_back(static_cast<double>(j) * slot, j);
  }
  for (const auto& c : components) {
    for (const auto& e : c.events()) {
      auto j = static_cast<std::uint64_t>(std::floor(e.time / slot));
      if (static_cast<double>(j + 1) * slot <= e.time) ++j;
      if (j > 0 && static_cast<double>(j) * slot > e.time) --j;
      candidates.emplace_back(e.time, j);
    }
  }
  std::sort(candidates.begin(), candidates.end());

  const ConfigId origin = components.front().config_at(0.0);
  ConfigId current = origin;
  std::vector<ReconfigEvent> events;
  for (const auto& [t, j] : candidates) {
    if (!events.empty() && events.back().time == t) continue;
    const ConfigId exposed = components[j % k].config_at(t);
    if (exposed != current) {
      events.push_back({t, exposed});
      current = exposed;
    }
  }
  return ConfigTrajectory(origin, horizon, std::move(events));
}

VarietyMeasure observed_variety(const ConfigTrajectory& traj, double t0, double t1) {
  if (!(t0 >= 0.0) || !(t1 <= traj.horizon()) || !(t0 < t1)) {
    throw DomainError("observation window must satisfy 0 <= t0 < t1 <= horizon");
  }
  std::set<ConfigId> seen{traj.config_at(t0)};
  for (const auto& e : traj.events()) {
    if (e.time > t0 && e.time <= t1) seen.insert(e.config);
  }
  return VarietyMeasure(Count(seen.size()));
}

std::optional<double> exact_period(const ConfigTrajectory& traj) {
  return repeating_period(traj, true);
}

TrajectoryClass classify_trajectory(const ConfigTrajectory& traj) {
  if (traj.events().empty()) return {ProcessKind::Stationary, std::nullopt};
  if (auto p = repeating_period(traj, true)) return {ProcessKind::Cyclostationary, p};
  if (auto p = repeating_period(traj, false)) return {ProcessKind::Cyclostationary, p};
  return {ProcessKind::NonStationary, std::nullopt};
}

}  // namespace requisite
