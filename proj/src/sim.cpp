#include "requisite/sim.hpp"

#include "requisite/errors.hpp"
#include "requisite/rng.hpp"

#include <charconv>
#include <cmath>
#include <queue>
#include <string>
#include <variant>

namespace requisite {

namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }
bool positive_finite(double x) { return x > 0.0 && std::isfinite(x); }

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ValidationError(field + ": " + what);
}

void validate_dist(const DurationDist& d, const std::string& field) {
  if (d.kind == DurationDist::Kind::Constant) {
    require(d.value >= 0.0 && std::isfinite(d.value), field, "constant must be non-negative");
  } else {
    require(positive_finite(d.value), field, "exponential mean must be positive");
  }
}

double sample(const DurationDist& d, RandomStream& rng) {
  return d.kind == DurationDist::Kind::Constant ? d.value : rng.exponential(d.value);
}

// Internal actions. Kinds that share a priority with a public event kind sort
// with it.
enum class Action {
  Reconfigure = 0,
  Scan = 1,
  Attack = 2,
  Detection = 5,
  ScheduledReset = 5,
  ResetComplete = 6,
};

struct Pending {
  double time;
  Action action;
  std::uint64_t sequence;
  std::uint64_t token;  // Reconfigure: event index. Detection: compromise token.

  bool operator>(const Pending& other) const {
    if (time != other.time) return time > other.time;
    if (action != other.action) return static_cast<int>(action) > static_cast<int>(other.action);
    return sequence > other.sequence;
  }
};

class Engine {
 public:
  Engine(const Scenario& s, std::uint64_t seed)
      : s_(s),
        trajectory_(generate_trajectory(s.defender.policy, s.defender.space, s.horizon,
                                        mix64(seed ^ fnv1a64("defender.trajectory")),
                                        s.defender.draw_mode)),
        scan_timing_(seed, "attacker.scan_timing"),
        exploit_dev_(seed, "attacker.exploit_dev"),
        dispatch_scan_(seed, "attacker.dispatch_scan"),
        dispatch_attack_(seed, "attacker.dispatch_attack"),
        mismatch_(seed, "attacker.mismatch"),
        bypass_(seed, "attacker.bypass"),
        detection_(seed, "defender.detection"),
        detection_delay_(seed, "defender.detection_delay"),
        persistence_(seed, "defender.persistence") {}

  std::vector<SimEvent> run() {
    const auto events = trajectory_.events();
    for (std::size_t i = 0; i < events.size(); ++i) push(events[i].time, Action::Reconfigure, i);
    schedule_scan(0.0);
    if (s_.defender.scheduled_reset_period) {
      push(*s_.defender.scheduled_reset_period, Action::ScheduledReset, kScheduledToken);
    }

    while (!queue_.empty()) {
      const Pending next = queue_.top();
      queue_.pop();
      if (next.time > s_.horizon) break;
      dispatch(next);
    }
    return std::move(log_);
  }

 private:
  void push(double time, Action action, std::uint64_t token) {
    queue_.push({time, action, sequence_++, token});
  }

  void emit(double t, EventKind kind, std::optional<ConfigId> config = std::nullopt,
            bool flag = false) {
    log_.push_back({t, kind, config, flag});
  }

  void schedule_scan(double from) {
    const double gap = s_.attacker.scan_timing == ScanTiming::Fixed
                           ? s_.attacker.scan_interval
                           : scan_timing_.exponential(s_.attacker.scan_interval);
    push(from + gap, Action::Scan, 0);
  }

  ConfigId member_config(double t, std::uint64_t member) const {
    const ConfigId base = trajectory_.config_at(t);
    return (base + member) % s_.defender.space.size();
  }

  void dispatch(const Pending& p) {
    switch (p.action) {
      case Action::Reconfigure:
        emit(p.time, EventKind::Reconfigure, trajectory_.events()[p.token].config);
        break;
      case Action::Scan: on_scan(p.time); break;
      case Action::Attack: on_attack(p.time); break;
      case Action::Detection:  // also ScheduledReset, same enumerator value
        if (p.token == kScheduledToken) {
          on_scheduled_reset(p.time);
        } else {
          on_detection(p.time, p.token);
        }
        break;
      case Action::ResetComplete: on_reset_complete(p.time); break;
    }
  }

  void on_scan(double t) {
    ConfigId observed = 0;
    if (s_.pool_size > 1) {
      observed = member_config(t, dispatch_scan_.below(s_.pool_size));
    } else {
      observed = trajectory_.config_at(t);
    }
    emit(t, EventKind::Scan, observed);
    scan_epoch_ = trajectory_.epoch_at(t);
    target_ = s_.attacker.offline_target.value_or(observed);
    push(t + sample(s_.attacker.exploit_dev_time, exploit_dev_), Action::Attack, 0);
  }

  void on_attack(double t) {
    emit(t, EventKind::ExploitReady, target_);

    ConfigId current = 0;
    if (s_.pool_size > 1) {
      current = member_config(t, dispatch_attack_.below(s_.pool_size));
    } else {
      current = trajectory_.config_at(t);
    }
    const bool value_ok = current == target_;
    const bool matched = s_.validity == ExploitValidity::StrictEpoch
                             ? value_ok && trajectory_.epoch_at(t) == scan_epoch_
                             : value_ok;
    const bool lucky = mismatch_.bernoulli(s_.attacker.mismatch_success_prob);
    const bool bypassed = bypass_.bernoulli(s_.attacker.bypass_prob);
    const bool success = !resetting_ && (matched || lucky || bypassed);
    emit(t, EventKind::AttackLaunched, target_, success);

    if (success) {
      if (!compromised_) {
        compromised_ = true;
        emit(t, EventKind::CompromiseStart);
      }
      maybe_detect(t);
    }

    if (success && !s_.attacker.continue_while_compromised) {
      halted_ = true;
    } else if (success || s_.attacker.retry) {
      schedule_scan(t);
    }
  }

  void maybe_detect(double t) {
    if (detection_pending_ || resetting_) return;
    if (!detection_.bernoulli(s_.defender.detection_prob)) return;
    detection_pending_ = true;
    push(t + sample(s_.defender.detection_delay, detection_delay_), Action::Detection,
         compromise_token_);
  }

  void start_reset(double t) {
    emit(t, EventKind::Detection);
    resetting_ = true;
    push(t + s_.defender.reset_latency, Action::ResetComplete, 0);
  }

  void on_detection(double t, std::uint64_t token) {
    if (token != compromise_token_) return;
    detection_pending_ = false;
    if (resetting_ || !compromised_) return;
    start_reset(t);
  }

  void on_scheduled_reset(double t) {
    if (compromised_ && !resetting_) start_reset(t);
    push(t + *s_.defender.scheduled_reset_period, Action::ScheduledReset, kScheduledToken);
  }

  void on_reset_complete(double t) {
    resetting_ = false;
    const bool survived = persistence_.bernoulli(s_.defender.persistence_prob);
    emit(t, EventKind::ResetComplete, std::nullopt, survived);
    if (survived) return;
    compromised_ = false;
    detection_pending_ = false;
    ++compromise_token_;
    if (halted_) {
      halted_ = false;
      schedule_scan(t);
    }
  }

  static constexpr std::uint64_t kScheduledToken = ~std::uint64_t{0};

  const Scenario& s_;
  ConfigTrajectory trajectory_;
  RandomStream scan_timing_;
  RandomStream exploit_dev_;
  RandomStream dispatch_scan_;
  RandomStream dispatch_attack_;
  RandomStream mismatch_;
  RandomStream bypass_;
  RandomStream detection_;
  RandomStream detection_delay_;
  RandomStream persistence_;

  std::priority_queue<Pending, std::vector<Pending>, std::greater<>> queue_;
  std::uint64_t sequence_ = 0;
  std::vector<SimEvent> log_;

  std::size_t scan_epoch_ = 0;
  ConfigId target_ = 0;
  bool compromised_ = false;
  bool detection_pending_ = false;
  bool resetting_ = false;
  bool halted_ = false;
  std::uint64_t compromise_token_ = 0;
};

void append_number(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

}  // namespace

void validate(const Scenario& s) {
  const auto& a = s.attacker;
  const auto& d = s.defender;
  require(positive_finite(s.horizon), "horizon", "must be positive");
  require(s.pool_size >= 1, "pool_size", "must be at least 1");
  require(positive_finite(a.scan_interval), "attacker.scan_interval", "must be positive");
  validate_dist(a.exploit_dev_time, "attacker.exploit_dev_time");
  require(is_probability(a.mismatch_success_prob), "attacker.mismatch_success_prob",
          "must lie in [0, 1]");
  require(is_probability(a.bypass_prob), "attacker.bypass_prob", "must lie in [0, 1]");
  if (a.offline_target) {
    require(*a.offline_target < d.space.size(), "attacker.offline_target",
            "must name a configuration in the defender's space");
  }
  require(is_probability(d.detection_prob), "defender.detection_prob", "must lie in [0, 1]");
  validate_dist(d.detection_delay, "defender.detection_delay");
  require(positive_finite(d.reset_latency), "defender.reset_latency", "must be positive");
  require(is_probability(d.persistence_prob), "defender.persistence_prob", "must lie in [0, 1]");
  if (d.scheduled_reset_period) {
    require(positive_finite(*d.scheduled_reset_period), "defender.scheduled_reset_period",
            "must be positive");
  }
}

std::string_view event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::Reconfigure: return "reconfigure";
    case EventKind::Scan: return "scan";
    case EventKind::ExploitReady: return "exploit_ready";
    case EventKind::AttackLaunched: return "attack_launched";
    case EventKind::CompromiseStart: return "compromise_start";
    case EventKind::Detection: return "detection";
    case EventKind::ResetComplete: return "reset_complete";
  }
  return "?";
}

SimResult run(const Scenario& scenario, std::uint64_t seed) {
  validate(scenario);
  SimResult result;
  result.trace.scenario = scenario;
  result.trace.seed = seed;
  result.trace.events = Engine(scenario, seed).run();
  result.metrics = compute_metrics(result.trace);
  return result;
}

SimMetrics compute_metrics(const SimTrace& trace) {
  const double horizon = trace.scenario.horizon;
  SimMetrics m;
  bool compromised = false;
  bool resetting = false;
  double compromised_since = 0.0;
  double clean_since = 0.0;
  double reset_since = 0.0;
  double compromised_time = 0.0;
  double clean_time = 0.0;
  double downtime = 0.0;

  for (const auto& e : trace.events) {
    switch (e.kind) {
      case EventKind::ExploitReady: ++m.exploits_developed; break;
      case EventKind::AttackLaunched:
        if (e.flag) ++m.successful_attacks;
        break;
      case EventKind::CompromiseStart:
        if (!m.time_to_first_compromise) m.time_to_first_compromise = e.time;
        clean_time += e.time - clean_since;
        compromised = true;
        compromised_since = e.time;
        break;
      case EventKind::Detection:
        resetting = true;
        reset_since = e.time;
        break;
      case EventKind::ResetComplete:
        resetting = false;
        downtime += e.time - reset_since;
        if (compromised && !e.flag) {
          compromised = false;
          compromised_time += e.time - compromised_since;
          clean_since = e.time;
        }
        break;
      default: break;
    }
  }
  if (compromised) {
    compromised_time += horizon - compromised_since;
  } else {
    clean_time += horizon - clean_since;
  }
  if (resetting) downtime += horizon - reset_since;

  m.compromised_fraction = compromised_time / horizon;
  m.clean_fraction = clean_time / horizon;
  m.availability = 1.0 - downtime / horizon;
  return m;
}

std::string serialize_trace(const SimTrace& trace) {
  std::string out = "seed " + std::to_string(trace.seed) + "\n";
  for (const auto& e : trace.events) {
    append_number(out, e.time);
    out += ' ';
    out += event_kind_name(e.kind);
    if (e.config) {
      out += ' ';
      out += std::to_string(*e.config);
    }
    if (e.flag) out += " +";
    out += '\n';
  }
  return out;
}

Scenario kiosk_scenario(const KioskParams& p) {
  if (!positive_finite(p.attack_rate)) throw ValidationError("attack_rate: must be positive");
  Scenario s;
  s.horizon = p.horizon;
  s.pool_size = 1;
  s.attacker.scan_interval = 1.0 / p.attack_rate;
  s.attacker.scan_timing = ScanTiming::Exponential;
  s.attacker.exploit_dev_time = DurationDist::constant(0.0);
  s.attacker.retry = true;
  s.attacker.continue_while_compromised = true;
  s.defender.space = ConfigSpace(1);
  s.defender.policy = ReconfigPolicy::stationary();
  s.defender.detection_prob = p.detection_prob;
  s.defender.detection_delay = p.detection_delay;
  s.defender.reset_latency = p.reset_latency;
  s.defender.persistence_prob = p.persistence_prob;
  validate(s);
  return s;
}

Scenario mtd_pool_scenario(const MtdPoolParams& p) {
  if (p.pool_size < 2) throw DomainError("an MTD pool needs at least two members");
  Scenario s;
  s.horizon = p.horizon;
  s.pool_size = p.pool_size;
  s.attacker = p.attacker;
  s.attacker.offline_target = p.attacker.offline_target.value_or(0);
  s.defender.space = ConfigSpace(p.configs);
  s.defender.policy = ReconfigPolicy::stationary();
  s.defender.detection_prob = 0.0;
  s.defender.reset_latency = p.reset_latency;
  s.defender.scheduled_reset_period = p.reset_period;
  validate(s);
  return s;
}

}  // namespace requisite
