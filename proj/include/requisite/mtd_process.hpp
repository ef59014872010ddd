#pragma once

// Defender configuration trajectories G(S, t): when the system reconfigures
// and which configuration it exposes in between.

#include "requisite/variety.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace requisite {

using ConfigId = std::uint64_t;

/// M distinguishable configurations and the entropy one move injects.
class ConfigSpace {
 public:
  /// Uniform draws: per_move_entropy = log2(size).
  explicit ConfigSpace(std::uint64_t size);
  ConfigSpace(std::uint64_t size, double per_move_entropy);

  std::uint64_t size() const { return size_; }
  double per_move_entropy() const { return per_move_entropy_; }

 private:
  std::uint64_t size_;
  double per_move_entropy_;
};

struct ExponentialIntervals {
  double mean;
};
struct UniformIntervals {
  double low;
  double high;
};
using IntervalDistribution = std::variant<ExponentialIntervals, UniformIntervals>;

double mean_interval(const IntervalDistribution& d);

enum class ProcessKind { Stationary, Cyclostationary, PolyCyclostationary, NonStationary };

std::string_view process_kind_name(ProcessKind kind);

/// When a defender reconfigures.
class ReconfigPolicy {
 public:
  struct Stationary {};
  struct Periodic {
    double period;
  };
  struct PolyPeriodic {
    std::vector<double> periods;
  };
  struct PseudoRandom {
    IntervalDistribution intervals;
  };
  using Variant = std::variant<Stationary, Periodic, PolyPeriodic, PseudoRandom>;

  static ReconfigPolicy stationary();
  static ReconfigPolicy periodic(double period);
  static ReconfigPolicy poly_periodic(std::vector<double> periods);
  static ReconfigPolicy pseudo_random(IntervalDistribution intervals);

  const Variant& variant() const { return v_; }

 private:
  explicit ReconfigPolicy(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

ProcessKind classify(const ReconfigPolicy& policy);

/// Nested membership: Stationary within Cyclostationary within
/// PolyCyclostationary within NonStationary.
bool belongs_to(ProcessKind kind, ProcessKind outer);

/// Whether a reconfiguration may redraw the current configuration.
enum class DrawMode {
  ForcedMove,  // uniform over the other M - 1 configurations
  Uniform,     // uniform over all M
};

struct ReconfigEvent {
  double time;
  ConfigId config;

  friend bool operator==(const ReconfigEvent&, const ReconfigEvent&) = default;
};

class ConfigTrajectory {
 public:
  /// Events must be strictly increasing in time and lie within [0, horizon].
  ConfigTrajectory(ConfigId origin, double horizon, std::vector<ReconfigEvent> events);

  ConfigId origin() const { return origin_; }
  double horizon() const { return horizon_; }
  std::span<const ReconfigEvent> events() const { return events_; }

  /// Configuration set by the latest event at or before t.
  ConfigId config_at(double t) const;
  /// Number of events with time <= t.
  std::size_t epoch_at(double t) const;

  friend bool operator==(const ConfigTrajectory&, const ConfigTrajectory&) = default;

 private:
  ConfigId origin_;
  double horizon_;
  std::vector<ReconfigEvent> events_;
};

/// Deterministic in (policy, space, horizon, seed, mode). The origin is drawn
/// uniformly; each event draws a new configuration per `mode`. Coincident
/// poly-periodic event times coalesce into one draw.
ConfigTrajectory generate_trajectory(const ReconfigPolicy& policy, const ConfigSpace& space,
                                     double horizon, std::uint64_t seed,
                                     DrawMode mode = DrawMode::ForcedMove);

/// Round-robin composite: during slot k = floor(t / slot) the composite
/// exposes component (k mod K)'s configuration at t. Events are emitted only
/// where the exposed configuration changes.
ConfigTrajectory interleave(std::span<const ConfigTrajectory> components, double slot);

/// Distinct configurations exposed during [t0, t1], including the one active
/// at t0.
VarietyMeasure observed_variety(const ConfigTrajectory& traj, double t0, double t1);

/// Smallest P such that the sample path satisfies config(t + P) == config(t),
/// supported by at least two full repetitions inside the horizon.
std::optional<double> exact_period(const ConfigTrajectory& traj);

struct TrajectoryClass {
  ProcessKind kind;
  std::optional<double> period;
};

/// Classification from a realized path. No events: Stationary. An exactly
/// periodic path, or periodic event timing with fresh draws: Cyclostationary
/// with that period. Anything else: NonStationary (a single path cannot
/// separate poly-periodic timing from aperiodic timing in general).
TrajectoryClass classify_trajectory(const ConfigTrajectory& traj);

}  // namespace requisite
