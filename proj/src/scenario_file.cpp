#include "requisite/scenario_file.hpp"

#include "requisite/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace requisite {

namespace {

using nlohmann::json;

std::string json_type(const json& j) { return j.type_name(); }

// A JSON value plus its pointer path, for diagnostics.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const json& raw() const { return j_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& msg) const { throw SchemaError(path_.empty() ? "/" : path_, msg); }

  Node at(const std::string& key) const {
    if (!has(key)) Node(j_, path_).fail("missing required key '" + key + "'");
    return Node(j_.at(key), path_ + "/" + key);
  }
  Node at(std::size_t i) const { return Node(j_.at(i), path_ + "/" + std::to_string(i)); }
  bool has(const std::string& key) const { return j_.is_object() && j_.contains(key); }
  std::optional<Node> find(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return at(key);
  }

  const Node& object(std::initializer_list<std::string_view> allowed) const {
    if (!j_.is_object()) fail("expected an object, found " + json_type(j_));
    for (const auto& item : j_.items()) {
      if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
        Node(item.value(), path_ + "/" + item.key()).fail("unknown key '" + item.key() + "'");
      }
    }
    return *this;
  }

  std::size_t size() const {
    if (!j_.is_array()) fail("expected an array, found " + json_type(j_));
    return j_.size();
  }

  std::string str() const {
    if (!j_.is_string()) fail("expected a string, found " + json_type(j_));
    return j_.get<std::string>();
  }
  double number() const {
    if (!j_.is_number()) fail("expected a number, found " + json_type(j_));
    return j_.get<double>();
  }
  double probability() const {
    const double p = number();
    if (!(p >= 0.0 && p <= 1.0)) fail("probability must lie in [0, 1]");
    return p;
  }
  std::uint64_t uint() const {
    if (!j_.is_number_integer() || (j_.is_number_integer() && !j_.is_number_unsigned() && j_.get<std::int64_t>() < 0)) {
      fail("expected a non-negative integer, found " + json_type(j_));
    }
    return j_.get<std::uint64_t>();
  }
  std::uint64_t positive() const {
    const auto v = uint();
    if (v == 0) fail("must be positive");
    return v;
  }
  bool boolean() const {
    if (!j_.is_boolean()) fail("expected a boolean, found " + json_type(j_));
    return j_.get<bool>();
  }
  // Big integers may be written as digit strings.
  Count count() const {
    if (j_.is_string()) {
      const auto s = j_.get<std::string>();
      if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        fail("expected a decimal integer string");
      }
      return Count(s);
    }
    return Count(uint());
  }

  Duration duration() const { return guarded([&] { return parse_duration(str()); }); }
  double duration_in(TimeUnit unit) const {
    const auto d = duration();
    return guarded([&] { return value_in(d, unit, "duration"); });
  }
  Rate rate() const { return guarded([&] { return parse_rate(str()); }); }
  TimeUnit unit() const { return guarded([&] { return parse_unit(str()); }); }

  // Re-throws library errors with this node's path in front.
  template <class F>
  auto guarded(F&& f) const -> decltype(f()) {
    try {
      return f();
    } catch (const UnitMismatchError& e) {
      throw UnitMismatchError(path_ + ": " + e.what());
    } catch (const UnitError& e) {
      throw UnitError(path_ + ": " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError(path_ + ": " + e.what());
    } catch (const DomainError& e) {
      throw ValidationError(path_ + ": " + e.what());
    }
  }

 private:
  const json& j_;
  std::string path_;
};

template <class E>
E pick(const Node& n, std::initializer_list<std::pair<std::string_view, E>> options) {
  const auto s = n.str();
  for (const auto& [name, value] : options) {
    if (name == s) return value;
  }
  std::string names;
  for (const auto& o : options) names += (names.empty() ? "" : ", ") + std::string(o.first);
  n.fail("'" + s + "' is not one of: " + names);
}

DurationDist parse_dist(const Node& n, TimeUnit unit) {
  if (n.raw().is_string()) return DurationDist::constant(n.duration_in(unit));
  n.object({"constant", "exponential"});
  if (n.raw().size() != 1) n.fail("give exactly one of 'constant' or 'exponential'");
  if (auto c = n.find("constant")) return DurationDist::constant(c->duration_in(unit));
  return DurationDist::exponential(n.at("exponential").duration_in(unit));
}

ReconfigPolicy parse_policy(const Node& n, TimeUnit unit) {
  n.object({"kind", "period", "periods", "intervals", "mean", "low", "high"});
  const auto kind = n.at("kind").str();
  auto only = [&](std::initializer_list<std::string_view> keys) { n.object(keys); };
  return n.guarded([&] {
    if (kind == "stationary") {
      only({"kind"});
      return ReconfigPolicy::stationary();
    }
    if (kind == "periodic") {
      only({"kind", "period"});
      return ReconfigPolicy::periodic(n.at("period").duration_in(unit));
    }
    if (kind == "poly_periodic") {
      only({"kind", "periods"});
      const auto ps = n.at("periods");
      std::vector<double> periods;
      for (std::size_t i = 0; i < ps.size(); ++i) periods.push_back(ps.at(i).duration_in(unit));
      return ReconfigPolicy::poly_periodic(std::move(periods));
    }
    if (kind == "pseudo_random") {
      const auto intervals = n.has("intervals") ? n.at("intervals").str() : std::string("exponential");
      if (intervals == "exponential") {
        only({"kind", "intervals", "mean"});
        return ReconfigPolicy::pseudo_random(ExponentialIntervals{n.at("mean").duration_in(unit)});
      }
      if (intervals == "uniform") {
        only({"kind", "intervals", "low", "high"});
        return ReconfigPolicy::pseudo_random(
            UniformIntervals{n.at("low").duration_in(unit), n.at("high").duration_in(unit)});
      }
      n.at("intervals").fail("'" + intervals + "' is not one of: exponential, uniform");
    }
    n.at("kind").fail("'" + kind + "' is not one of: stationary, periodic, poly_periodic, pseudo_random");
  });
}

AttackerModel parse_attacker(const Node& n, TimeUnit unit) {
  n.object({"scan_interval", "scan_timing", "exploit_dev_time", "retry", "mismatch_success_prob",
            "bypass_prob", "continue_while_compromised", "offline_target"});
  AttackerModel a;
  if (auto v = n.find("scan_interval")) a.scan_interval = v->duration_in(unit);
  if (auto v = n.find("scan_timing")) {
    a.scan_timing = pick<ScanTiming>(*v, {{"fixed", ScanTiming::Fixed}, {"exponential", ScanTiming::Exponential}});
  }
  if (auto v = n.find("exploit_dev_time")) a.exploit_dev_time = parse_dist(*v, unit);
  if (auto v = n.find("retry")) a.retry = v->boolean();
  if (auto v = n.find("mismatch_success_prob")) a.mismatch_success_prob = v->probability();
  if (auto v = n.find("bypass_prob")) a.bypass_prob = v->probability();
  if (auto v = n.find("continue_while_compromised")) a.continue_while_compromised = v->boolean();
  if (auto v = n.find("offline_target")) a.offline_target = v->uint();
  return a;
}

DefenderModel parse_defender(const Node& n, TimeUnit unit) {
  n.object({"configs", "per_move_entropy", "policy", "draw_mode", "detection_prob", "detection_delay",
            "reset_latency", "persistence_prob", "scheduled_reset_period"});
  DefenderModel d;
  if (auto v = n.find("configs")) {
    const auto m = v->positive();
    auto h = n.find("per_move_entropy");
    d.space = h ? v->guarded([&] { return ConfigSpace(m, h->number()); })
                : v->guarded([&] { return ConfigSpace(m); });
  } else if (n.has("per_move_entropy")) {
    n.fail("'per_move_entropy' requires 'configs'");
  }
  if (auto v = n.find("policy")) d.policy = parse_policy(*v, unit);
  if (auto v = n.find("draw_mode")) {
    d.draw_mode = pick<DrawMode>(*v, {{"forced_move", DrawMode::ForcedMove}, {"uniform", DrawMode::Uniform}});
  }
  if (auto v = n.find("detection_prob")) d.detection_prob = v->probability();
  if (auto v = n.find("detection_delay")) d.detection_delay = parse_dist(*v, unit);
  if (auto v = n.find("reset_latency")) d.reset_latency = v->duration_in(unit);
  if (auto v = n.find("persistence_prob")) d.persistence_prob = v->probability();
  if (auto v = n.find("scheduled_reset_period")) d.scheduled_reset_period = v->duration_in(unit);
  return d;
}

Scenario parse_sim_scenario(const Node& n, TimeUnit unit) {
  if (!n.raw().is_object()) n.fail("expected an object, found " + json_type(n.raw()));
  const auto preset = n.has("preset") ? n.at("preset").str() : std::string("custom");
  Scenario s;
  if (preset == "custom") {
    n.object({"preset", "horizon", "pool_size", "validity", "attacker", "defender"});
    s.horizon = n.at("horizon").duration_in(unit);
    if (auto v = n.find("pool_size")) s.pool_size = v->positive();
    if (auto v = n.find("validity")) {
      s.validity = pick<ExploitValidity>(
          *v, {{"strict_epoch", ExploitValidity::StrictEpoch}, {"value_match", ExploitValidity::ValueMatch}});
    }
    if (auto v = n.find("attacker")) s.attacker = parse_attacker(*v, unit);
    if (auto v = n.find("defender")) s.defender = parse_defender(*v, unit);
  } else if (preset == "kiosk") {
    n.object({"preset", "horizon", "detection_prob", "detection_delay", "reset_latency",
              "persistence_prob", "attack_rate"});
    KioskParams p;
    p.horizon = n.at("horizon").duration_in(unit);
    if (auto v = n.find("detection_prob")) p.detection_prob = v->probability();
    if (auto v = n.find("detection_delay")) p.detection_delay = parse_dist(*v, unit);
    if (auto v = n.find("reset_latency")) p.reset_latency = v->duration_in(unit);
    if (auto v = n.find("persistence_prob")) p.persistence_prob = v->probability();
    if (auto v = n.find("attack_rate")) {
      const auto r = v->rate();
      if (r.unit != unit) {
        throw UnitMismatchError(v->path() + ": rate is per " + std::string(unit_name(r.unit)) +
                                " but the scenario uses " + std::string(unit_name(unit)) + "s");
      }
      p.attack_rate = r.value;
    }
    s = n.guarded([&] { return kiosk_scenario(p); });
  } else if (preset == "mtd_pool") {
    n.object({"preset", "horizon", "pool_size", "configs", "reset_period", "reset_latency", "attacker"});
    MtdPoolParams p;
    p.horizon = n.at("horizon").duration_in(unit);
    if (auto v = n.find("pool_size")) p.pool_size = v->positive();
    if (auto v = n.find("configs")) p.configs = v->positive();
    if (auto v = n.find("reset_period")) p.reset_period = v->duration_in(unit);
    if (auto v = n.find("reset_latency")) p.reset_latency = v->duration_in(unit);
    if (auto v = n.find("attacker")) p.attacker = parse_attacker(*v, unit);
    s = n.guarded([&] { return mtd_pool_scenario(p); });
  } else {
    n.at("preset").fail("'" + preset + "' is not one of: custom, kiosk, mtd_pool");
  }
  n.guarded([&] { validate(s); });
  return s;
}

ChannelRate parse_channel(const Node& n) {
  n.object({"label", "states", "signals", "per"});
  const auto label = n.has("label") ? n.at("label").str() : std::string();
  const auto states = n.at("states").count();
  const auto signals = n.at("signals").number();
  const auto per = n.at("per").duration();
  return n.guarded([&] { return ChannelRate(label, states, signals, per); });
}

std::vector<ChannelRate> parse_channels(const Node& n) {
  std::vector<ChannelRate> out;
  for (std::size_t i = 0; i < n.size(); ++i) out.push_back(parse_channel(n.at(i)));
  return out;
}

std::size_t replications_of(const Node& n) {
  return n.has("replications") ? static_cast<std::size_t>(n.at("replications").positive()) : 1;
}

std::optional<std::uint64_t> seed_of(const Node& n) {
  if (!n.has("seed")) return std::nullopt;
  return n.at("seed").uint();
}

Request parse_request(const Node& n, std::size_t index) {
  if (!n.raw().is_object()) n.fail("expected an object, found " + json_type(n.raw()));
  const auto type = n.at("type").str();
  const auto name = n.has("name") ? n.at("name").str() : type + "#" + std::to_string(index);

  if (type == "variety") {
    n.object({"type", "name", "alphabet", "length", "max_step"});
    VarietyRequest r{name, {}, 1, std::nullopt};
    const auto alpha = n.at("alphabet");
    if (alpha.raw().is_array()) {
      for (std::size_t i = 0; i < alpha.size(); ++i) r.symbols.push_back(alpha.at(i).str());
    } else {
      const auto k = alpha.positive();
      for (std::uint64_t i = 1; i <= k; ++i) r.symbols.push_back(std::to_string(i));
    }
    alpha.guarded([&] { Alphabet check(r.symbols); });
    r.length = static_cast<std::size_t>(n.at("length").positive());
    if (auto v = n.find("max_step")) r.max_step = static_cast<int>(v->uint());
    return r;
  }
  if (type == "components") {
    n.object({"type", "name", "counts"});
    ComponentsRequest r{name, {}};
    const auto counts = n.at("counts");
    for (std::size_t i = 0; i < counts.size(); ++i) {
      r.counts.push_back(counts.at(i).count());
      if (r.counts.back() == 0) counts.at(i).fail("component variety must be positive");
    }
    if (r.counts.empty()) counts.fail("needs at least one component");
    return r;
  }
  if (type == "entropy") {
    n.object({"type", "name", "probabilities"});
    EntropyRequest r{name, {}};
    const auto ps = n.at("probabilities");
    for (std::size_t i = 0; i < ps.size(); ++i) r.probabilities.push_back(ps.at(i).number());
    ps.guarded([&] { Distribution check(r.probabilities); });
    return r;
  }
  if (type == "regulation") {
    n.object({"type", "name", "time_unit", "disturbances", "regulators"});
    RegulationRequest r{name, {}};
    r.scenario.time_unit = n.at("time_unit").unit();
    if (auto v = n.find("disturbances")) r.scenario.disturbances = parse_channels(*v);
    if (auto v = n.find("regulators")) r.scenario.regulators = parse_channels(*v);
    n.guarded([&] { analyze(r.scenario); });
    return r;
  }
  if (type == "reconfig_bound") {
    n.object({"type", "name", "h_move", "rate", "margin"});
    BoundRequest r{name, n.at("h_move").number(), n.at("rate").rate(), 1.0};
    if (auto v = n.find("margin")) r.margin = v->number();
    n.guarded([&] { max_reconfig_period(r.h_move_bits, r.rate.value, r.margin); });
    return r;
  }
  if (type == "simulation") {
    n.object({"type", "name", "time_unit", "scenario", "replications", "seed"});
    SimulationRequest r;
    r.name = name;
    r.time_unit = n.at("time_unit").unit();
    r.scenario = parse_sim_scenario(n.at("scenario"), r.time_unit);
    r.replications = replications_of(n);
    r.seed = seed_of(n);
    return r;
  }
  if (type == "sweep") {
    n.object({"type", "name", "time_unit", "scenario", "parameter", "values", "replications", "seed"});
    SweepRequest r;
    r.name = name;
    r.time_unit = n.at("time_unit").unit();
    r.scenario = parse_sim_scenario(n.at("scenario"), r.time_unit);
    r.parameter = pick<SweepParameter>(n.at("parameter"), {{"reconfig_period", SweepParameter::ReconfigPeriod},
                                                           {"pool_size", SweepParameter::PoolSize},
                                                           {"detection_prob", SweepParameter::DetectionProb}});
    const auto values = n.at("values");
    for (std::size_t i = 0; i < values.size(); ++i) {
      const auto v = values.at(i);
      switch (r.parameter) {
        case SweepParameter::ReconfigPeriod: r.values.push_back(v.duration_in(r.time_unit)); break;
        case SweepParameter::PoolSize: r.values.push_back(static_cast<double>(v.positive())); break;
        case SweepParameter::DetectionProb: r.values.push_back(v.probability()); break;
      }
      v.guarded([&] { validate(with_parameter(r.scenario, r.parameter, r.values.back())); });
    }
    if (r.values.empty()) values.fail("needs at least one value");
    r.replications = replications_of(n);
    r.seed = seed_of(n);
    return r;
  }
  n.at("type").fail("'" + type +
                    "' is not one of: variety, components, entropy, regulation, reconfig_bound, "
                    "simulation, sweep");
}

}  // namespace

std::string_view request_type(const Request& r) {
  static constexpr std::string_view kNames[] = {"variety",        "components", "entropy", "regulation",
                                                "reconfig_bound", "simulation", "sweep"};
  return kNames[r.index()];
}

const std::string& request_name(const Request& r) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, r);
}

ScenarioFile parse_scenario_text(std::string_view text, std::string_view source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    if (const auto p = msg.find("parse error"); p != std::string::npos) msg = msg.substr(p);
    throw ParseError(std::string(source) + ": " + msg);
  }

  const Node root(doc, "");
  root.object({"schema_version", "seed", "requests"});
  ScenarioFile file;
  const auto version = root.at("schema_version");
  if (version.uint() != static_cast<std::uint64_t>(kScenarioSchemaVersion)) {
    version.fail("unsupported schema version " + std::to_string(version.uint()) + " (expected " +
                 std::to_string(kScenarioSchemaVersion) + ")");
  }
  if (auto s = root.find("seed")) file.seed = s->uint();
  const auto requests = root.at("requests");
  if (requests.size() == 0) requests.fail("needs at least one request");
  for (std::size_t i = 0; i < requests.size(); ++i) file.requests.push_back(parse_request(requests.at(i), i));
  file.digest = fnv1a64(text);
  return file;
}

ScenarioFile parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open scenario file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw FileError("cannot read scenario file '" + path.string() + "'");
  return parse_scenario_text(buf.str(), path.string());
}

}  // namespace requisite
