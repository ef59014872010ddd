#pragma once

// Seeded discrete-event simulation of the attacker/defender loop.
//
// The attacker cycles scan -> develop exploit -> attack. The defender moves
// along a configuration trajectory and regulates compromises by detection and
// reset. Each stochastic draw site reads its own labeled RandomStream, so a run
// is a pure function of (scenario, seed).

#include "requisite/mtd_process.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace requisite {

/// Constant or exponentially distributed non-negative duration.
struct DurationDist {
  enum class Kind { Constant, Exponential };
  Kind kind = Kind::Constant;
  double value = 0.0;  // the constant, or the mean

  static DurationDist constant(double v) { return {Kind::Constant, v}; }
  static DurationDist exponential(double mean) { return {Kind::Exponential, mean}; }
};

enum class ScanTiming {
  Fixed,        // every scan_interval
  Exponential,  // exponential gaps with mean scan_interval
};

/// How an exploit developed against a scanned configuration is judged.
enum class ExploitValidity {
  StrictEpoch,  // no reconfiguration since the scan (and the value matches)
  ValueMatch,   // the attacked configuration equals the scanned one
};

struct AttackerModel {
  double scan_interval = 1.0;
  ScanTiming scan_timing = ScanTiming::Fixed;
  DurationDist exploit_dev_time = DurationDist::constant(0.0);
  bool retry = true;  // rescan after a failed attack
  double mismatch_success_prob = 0.0;
  double bypass_prob = 0.0;
  /// Keep attacking while the system is already compromised (an arrival
  /// stream rather than one campaign that pauses once it holds control).
  bool continue_while_compromised = false;
  /// Exploit built offline for a fixed configuration instead of the scanned one.
  std::optional<ConfigId> offline_target;
};

struct DefenderModel {
  ConfigSpace space{1};
  ReconfigPolicy policy = ReconfigPolicy::stationary();
  DrawMode draw_mode = DrawMode::ForcedMove;
  double detection_prob = 0.0;
  DurationDist detection_delay = DurationDist::constant(0.0);
  double reset_latency = 1.0;
  double persistence_prob = 0.0;
  /// Periodic restore of compromised systems to a clean image, independent of
  /// detection.
  std::optional<double> scheduled_reset_period;
};

struct Scenario {
  AttackerModel attacker;
  DefenderModel defender;
  double horizon = 100.0;
  /// 1: a single system. >1: a pool whose member i runs configuration
  /// (c + i) mod M where c is the trajectory's configuration; every scan and
  /// attack is dispatched to a uniformly chosen member.
  std::uint64_t pool_size = 1;
  ExploitValidity validity = ExploitValidity::StrictEpoch;
};

/// Throws ValidationError naming the offending field.
void validate(const Scenario& s);

/// Declaration order is the tie-break order for simultaneous events.
enum class EventKind {
  Reconfigure,
  Scan,
  ExploitReady,
  AttackLaunched,
  CompromiseStart,
  Detection,
  ResetComplete,
};

std::string_view event_kind_name(EventKind kind);

struct SimEvent {
  double time = 0.0;
  EventKind kind = EventKind::Scan;
  /// Reconfigure: new configuration. Scan: observed. ExploitReady and
  /// AttackLaunched: target.
  std::optional<ConfigId> config;
  /// AttackLaunched: the attack succeeded. ResetComplete: the compromise
  /// survived the reset.
  bool flag = false;

  friend bool operator==(const SimEvent&, const SimEvent&) = default;
};

struct SimTrace {
  Scenario scenario;
  std::uint64_t seed = 0;
  std::vector<SimEvent> events;
};

struct SimMetrics {
  std::optional<double> time_to_first_compromise;
  double compromised_fraction = 0.0;
  double clean_fraction = 1.0;
  std::uint64_t successful_attacks = 0;
  std::uint64_t exploits_developed = 0;
  double availability = 1.0;  // 1 - reset downtime / horizon
};

struct SimResult {
  SimTrace trace;
  SimMetrics metrics;
};

SimResult run(const Scenario& scenario, std::uint64_t seed);

/// Metrics derived from the event log alone.
SimMetrics compute_metrics(const SimTrace& trace);

/// Canonical one-event-per-line text form; equal traces give equal bytes.
std::string serialize_trace(const SimTrace& trace);

struct KioskParams {
  double detection_prob = 1.0;
  DurationDist detection_delay = DurationDist::constant(0.0);
  double reset_latency = 1.0;
  double persistence_prob = 0.0;
  double attack_rate = 1.0;  // attacks per time unit, exponential gaps
  double horizon = 1000.0;
};

/// One stationary system with a single configuration. Attacks arrive as an
/// exponential stream and the only regulator is detect-and-reset.
Scenario kiosk_scenario(const KioskParams& p);

struct MtdPoolParams {
  std::uint64_t pool_size = 2;
  std::uint64_t configs = 2;
  std::optional<double> reset_period;  // empty: resets disabled
  double reset_latency = 1.0;
  AttackerModel attacker;
  double horizon = 1000.0;
};

/// Diverse server pool with per-request dispatch and optional periodic
/// restores. The attacker holds one exploit developed offline (its
/// offline_target, or configuration 0). Throws DomainError for pool_size < 2.
Scenario mtd_pool_scenario(const MtdPoolParams& p);

}  // namespace requisite
