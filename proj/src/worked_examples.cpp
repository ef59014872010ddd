#include "requisite/worked_examples.hpp"

#include "requisite/regulation.hpp"
#include "requisite/variety.hpp"

#include <fmt/format.h>

#include <cmath>
#include <vector>

namespace requisite {

namespace {

struct Computed {
  std::string description;
  std::optional<Count> count;
  std::optional<double> value;
  std::optional<std::string> text;
  std::string shown;  // human rendering of everything computed
};

const Duration kSecond{1.0, TimeUnit::Second};
const Duration kDay{1.0, TimeUnit::Day};

ChannelRate telegraph() { return ChannelRate("telegraph", 9, 1.0, {5.0, TimeUnit::Second}); }
ChannelRate rudder() { return ChannelRate("rudder", 50, 1.0, kSecond); }

RegulationScenario army() {
  RegulationScenario s;
  s.time_unit = TimeUnit::Day;
  // ten divisions, each choosing one of two moves a million times a day
  for (int i = 0; i < 10; ++i) s.disturbances.emplace_back("division", 2, 1e6, kDay);
  // ten signalers at 60 letters a minute for 8 hours, 2 bits per letter
  s.regulators.emplace_back("signalers", 4, 10.0 * 60 * 60 * 8, kDay);
  return s;
}

SequenceSpace vector_space(bool adjacent) {
  if (adjacent) return SequenceSpace(Alphabet::numbered(4), 10, SuccessorConstraint::adjacent_within(4, 1));
  return SequenceSpace(Alphabet::numbered(4), 10);
}

std::string bits_text(double bits) { return fmt::format("{:.1f} bits", bits); }

Count integral(double v) { return Count(static_cast<unsigned long long>(std::llround(v))); }

Computed compute(const std::string& id) {
  Computed c;
  if (id == "component_variety") {
    const auto m = combined_variety(std::vector<Count>{Alphabet::numbered(4).size()});
    c.description = "variety of one component over {1,2,3,4}";
    c.count = m.count();
    c.shown = fmt::format("{} ({})", m.count().str(), bits_text(m.bits()));
  } else if (id == "unconstrained_vectors" || id == "constrained_vectors") {
    const bool adjacent = id == "constrained_vectors";
    const auto m = variety_count(vector_space(adjacent));
    c.description = adjacent ? "10-vectors, adjacent components differ by at most 1"
                             : "10-vectors, independent components";
    c.count = m.count();
    c.value = m.bits();
    c.shown = fmt::format("{} / {}", m.count().str(), bits_text(m.bits()));
  } else if (id == "closed_form") {
    const auto closed = adjacent_step_closed_form(10);
    const auto dp = variety_count(vector_space(true)).count();
    c.description = "2*F(21) closed form agrees with the transfer count";
    c.count = closed == dp ? std::optional<Count>(closed) : std::nullopt;
    c.shown = fmt::format("2*F(21) = {} (transfer count {})", closed.str(), dp.str());
  } else if (id == "telegraph_rate") {
    c.description = "telegraph: 1 of 9 orders every 5 s";
    c.value = channel_rate_bits(telegraph());
    c.shown = fmt::format("{:.4f} bits/s", *c.value);
  } else if (id == "rudder_rate") {
    c.description = "rudder: 1 of 50 positions every second";
    c.value = channel_rate_bits(rudder());
    c.shown = fmt::format("{:.4f} bits/s", *c.value);
  } else if (id == "ship_bound") {
    const std::vector<ChannelRate> regs{telegraph(), rudder()};
    c.description = "largest disturbance the ship's regulators can absorb";
    c.value = max_controllable_disturbance(regs);
    c.shown = fmt::format("{:.4f} bits/s", *c.value);
  } else if (id == "army_disturbance") {
    const auto v = analyze(army());
    c.description = "army disturbance V_D";
    c.count = integral(v.total_disturbance);
    c.shown = fmt::format("{:.0f} bits/day", v.total_disturbance);
  } else if (id == "signal_channel") {
    const auto v = analyze(army());
    c.description = "intelligence channel V_R";
    c.count = integral(v.total_regulation);
    c.shown = fmt::format("{:.0f} bits/day", v.total_regulation);
  } else if (id == "deficit_ratio") {
    const auto v = analyze(army());
    c.description = "V_D / V_R";
    c.value = v.deficit_ratio.value_or(0.0);
    c.shown = fmt::format("{:.4f}", *c.value);
  } else if (id == "verdict") {
    const auto v = analyze(army());
    c.description = "can the channel regulate the army";
    c.text = v.controllable ? "sufficient" : "insufficient";
    c.shown = *c.text;
  }
  return c;
}

std::string expected_text(const Expectation& e) {
  std::vector<std::string> parts;
  if (e.exact) parts.push_back(*e.exact);
  if (e.value) parts.push_back(fmt::format("{} +/- {}", *e.value, e.tolerance));
  if (e.text) parts.push_back(*e.text);
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : " / ") + p;
  return out;
}

}  // namespace

const std::vector<std::string>& worked_example_ids() {
  static const std::vector<std::string> ids{
      "component_variety", "unconstrained_vectors", "constrained_vectors", "closed_form",
      "telegraph_rate",    "rudder_rate",           "ship_bound",          "army_disturbance",
      "signal_channel",    "deficit_ratio",         "verdict"};
  return ids;
}

ExpectedTable default_expectations() {
  ExpectedTable t;
  t["component_variety"] = {"4", std::nullopt, 0.0, std::nullopt};
  t["unconstrained_vectors"] = {"1048576", 20.0, 0.05, std::nullopt};
  t["constrained_vectors"] = {"21892", 14.4, 0.05, std::nullopt};
  t["closed_form"] = {"21892", std::nullopt, 0.0, std::nullopt};
  t["telegraph_rate"] = {std::nullopt, 0.63, 0.05, std::nullopt};
  t["rudder_rate"] = {std::nullopt, 5.64, 0.05, std::nullopt};
  t["ship_bound"] = {std::nullopt, 6.3, 0.05, std::nullopt};
  t["army_disturbance"] = {"10000000", std::nullopt, 0.0, std::nullopt};
  t["signal_channel"] = {"576000", std::nullopt, 0.0, std::nullopt};
  t["deficit_ratio"] = {std::nullopt, 17.36, 0.01, std::nullopt};
  t["verdict"] = {std::nullopt, std::nullopt, 0.0, "insufficient"};
  return t;
}

std::vector<ExampleCheck> run_worked_examples(const ExpectedTable& expected) {
  std::vector<ExampleCheck> out;
  for (const auto& id : worked_example_ids()) {
    const auto c = compute(id);
    ExampleCheck check{id, c.description, c.shown, "(missing)", false};
    const auto it = expected.find(id);
    if (it != expected.end()) {
      const auto& e = it->second;
      check.expected = expected_text(e);
      bool ok = e.exact || e.value || e.text;
      if (e.exact) ok = ok && c.count && c.count->str() == *e.exact;
      if (e.value) ok = ok && c.value && std::abs(*c.value - *e.value) <= e.tolerance;
      if (e.text) ok = ok && c.text && *c.text == *e.text;
      check.pass = ok;
    }
    out.push_back(std::move(check));
  }
  return out;
}

}  // namespace requisite
