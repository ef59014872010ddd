#include "requisite/commands.hpp"

#include "requisite/errors.hpp"
#include "requisite/regulation.hpp"
#include "requisite/replication.hpp"
#include "requisite/rng.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <limits>
#include <sstream>

namespace requisite {

namespace {

Cell count_cell(const Count& c) {
  if (c <= std::numeric_limits<std::uint64_t>::max()) return Cell(c.convert_to<std::uint64_t>());
  return Cell(c.str());
}

Cell optional_cell(const std::optional<double>& v, int dec = -1) {
  return v ? Cell(*v, dec) : Cell::null();
}

std::string plural(TimeUnit u) { return std::string(unit_name(u)) + "s"; }

const std::vector<std::string> kAggregateColumns{
    "compromise_probability", "ttfc_mean",           "ttfc_excluded",         "compromised_fraction",
    "compromised_ci_low",     "compromised_ci_high", "successful_attacks",    "exploits_developed",
    "availability"};

void append_aggregate(std::vector<Cell>& row, const Aggregate& a) {
  row.emplace_back(a.compromise_probability, 4);
  row.push_back(a.runs > a.ttfc_excluded ? Cell(a.time_to_first_compromise.mean, 3) : Cell::null());
  row.emplace_back(static_cast<std::uint64_t>(a.ttfc_excluded));
  row.emplace_back(a.compromised_fraction.mean, 4);
  row.emplace_back(a.compromised_fraction.ci_low, 4);
  row.emplace_back(a.compromised_fraction.ci_high, 4);
  row.emplace_back(a.successful_attacks.mean, 3);
  row.emplace_back(a.exploits_developed.mean, 3);
  row.emplace_back(a.availability.mean, 4);
}

std::vector<std::string> with_aggregate(std::vector<std::string> cols) {
  cols.insert(cols.end(), kAggregateColumns.begin(), kAggregateColumns.end());
  return cols;
}

void run_variety(const VarietyRequest& r, Report& out) {
  const Alphabet alphabet(r.symbols);
  std::optional<SuccessorConstraint> constraint;
  if (r.max_step) constraint = SuccessorConstraint::adjacent_within(alphabet.size(), static_cast<std::size_t>(*r.max_step));
  const auto m = variety_count(SequenceSpace(alphabet, r.length, constraint));
  Table t{r.name, "variety", {"alphabet", "length", "max_step", "count", "bits"}, {}};
  t.rows.push_back({Cell(static_cast<std::uint64_t>(alphabet.size())), Cell(static_cast<std::uint64_t>(r.length)),
                    r.max_step ? Cell(static_cast<std::int64_t>(*r.max_step)) : Cell::null(), count_cell(m.count()),
                    Cell(m.bits(), 3)});
  out.tables.push_back(std::move(t));
}

void run_components(const ComponentsRequest& r, Report& out) {
  const auto m = combined_variety(r.counts);
  Table t{r.name, "components", {"components", "count", "bits"}, {}};
  t.rows.push_back({Cell(static_cast<std::uint64_t>(r.counts.size())), count_cell(m.count()), Cell(m.bits(), 3)});
  out.tables.push_back(std::move(t));
}

void run_entropy(const EntropyRequest& r, Report& out) {
  const Distribution d(r.probabilities);
  Table t{r.name, "entropy", {"outcomes", "entropy_bits", "max_bits"}, {}};
  t.rows.push_back({Cell(static_cast<std::uint64_t>(r.probabilities.size())), Cell(entropy_bits(d), 4),
                    Cell(std::log2(static_cast<double>(r.probabilities.size())), 4)});
  out.tables.push_back(std::move(t));
}

void run_regulation(const RegulationRequest& r, Report& out) {
  const auto unit = r.scenario.time_unit;
  const auto rate_col = "bits_per_" + std::string(unit_name(unit));
  Table channels{r.name, "channels", {"role", "label", "states", "signals", "per", rate_col}, {}};
  auto add = [&](const char* role, const std::vector<ChannelRate>& list) {
    for (const auto& ch : list) {
      channels.rows.push_back({Cell(role), Cell(ch.label()), count_cell(ch.states_per_signal()),
                               Cell(ch.signals_per_period()),
                               Cell(format_double(ch.period().value) + " " + std::string(unit_name(ch.unit()))),
                               Cell(channel_rate_bits(ch), 4)});
    }
  };
  add("disturbance", r.scenario.disturbances);
  add("regulator", r.scenario.regulators);

  const auto v = analyze(r.scenario);
  Table verdict{r.name,
                "verdict",
                {"unit", "disturbance", "regulation", "outcome_floor", "deficit_ratio", "controllable", "verdict"},
                {}};
  verdict.rows.push_back({Cell(std::string(unit_name(unit))), Cell(v.total_disturbance, 4),
                          Cell(v.total_regulation, 4), Cell(v.outcome_floor, 4), optional_cell(v.deficit_ratio, 2),
                          Cell(v.controllable),
                          Cell(v.controllable ? "sufficient" : "insufficient",
                               v.controllable ? Cell::Style::Good : Cell::Style::Bad)});
  out.tables.push_back(std::move(channels));
  out.tables.push_back(std::move(verdict));
}

Table bound_table(const std::string& name, double h, const Rate& rate, double margin) {
  const auto b = max_reconfig_period(h, rate.value, margin);
  Table t{name, "reconfig_bound", {"h_move_bits", "rate", "margin", "max_period", "unit"}, {}};
  t.rows.push_back({Cell(h), Cell(format_double(rate.value) + "/" + std::string(unit_name(rate.unit))), Cell(margin),
                    b.unbounded() ? Cell("unbounded") : Cell(*b.period), Cell(plural(rate.unit))});
  return t;
}

std::uint64_t effective_seed(const std::optional<std::uint64_t>& request_seed, const ScenarioFile& f,
                             const RunOptions& o) {
  if (o.seed) return *o.seed;
  return request_seed.value_or(f.seed);
}

void run_simulation(const SimulationRequest& r, std::uint64_t seed, Report& out) {
  const auto runs = replicate(r.scenario, seed, r.replications);
  const auto a = summarize(runs);
  Table t{r.name, "simulation", with_aggregate({"seed", "replications", "unit", "horizon", "process"}), {}};
  std::vector<Cell> row{Cell(seed), Cell(static_cast<std::uint64_t>(r.replications)),
                        Cell(std::string(unit_name(r.time_unit))), Cell(r.scenario.horizon),
                        Cell(std::string(process_kind_name(classify(r.scenario.defender.policy))))};
  append_aggregate(row, a);
  t.rows.push_back(std::move(row));
  out.tables.push_back(std::move(t));
}

void run_sweep(const SweepRequest& r, std::uint64_t seed, Report& out) {
  const auto rows = sweep(r.scenario, r.parameter, r.values, r.replications, seed);
  Table t{r.name, "sweep", with_aggregate({"parameter", "value", "unit", "seed", "replications"}), {}};
  const bool timed = r.parameter == SweepParameter::ReconfigPeriod;
  for (const auto& s : rows) {
    std::vector<Cell> row{Cell(std::string(sweep_parameter_name(r.parameter))), Cell(s.value),
                          timed ? Cell(std::string(unit_name(r.time_unit))) : Cell::null(), Cell(seed),
                          Cell(static_cast<std::uint64_t>(r.replications))};
    append_aggregate(row, s.aggregate);
    t.rows.push_back(std::move(row));
  }
  out.tables.push_back(std::move(t));
}

}  // namespace

Report run_scenario_file(const ScenarioFile& file, const RunOptions& options) {
  Report out;
  out.meta = {options.command, options.source, file.digest, options.seed ? *options.seed : file.seed};
  bool any_sweep = false;
  for (const auto& req : file.requests) {
    const bool is_sweep = std::holds_alternative<SweepRequest>(req);
    any_sweep |= is_sweep;
    if (options.sweeps_only && !is_sweep) continue;
    std::visit(
        [&](const auto& r) {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, VarietyRequest>) run_variety(r, out);
          if constexpr (std::is_same_v<T, ComponentsRequest>) run_components(r, out);
          if constexpr (std::is_same_v<T, EntropyRequest>) run_entropy(r, out);
          if constexpr (std::is_same_v<T, RegulationRequest>) run_regulation(r, out);
          if constexpr (std::is_same_v<T, BoundRequest>) out.tables.push_back(bound_table(r.name, r.h_move_bits, r.rate, r.margin));
          if constexpr (std::is_same_v<T, SimulationRequest>) run_simulation(r, effective_seed(r.seed, file, options), out);
          if constexpr (std::is_same_v<T, SweepRequest>) run_sweep(r, effective_seed(r.seed, file, options), out);
        },
        req);
  }
  if (options.sweeps_only && !any_sweep) throw ValidationError(options.source + ": file has no sweep requests");
  return out;
}

Report bound_report(double h_move_bits, const Rate& rate, double margin) {
  Report out;
  out.meta.command = "bound";
  out.tables.push_back(bound_table("bound", h_move_bits, rate, margin));
  return out;
}

ExamplesOutcome worked_examples_report(const ExpectedTable& expected, std::string source) {
  ExamplesOutcome o;
  o.report.meta.command = "paper-examples";
  o.report.meta.source = std::move(source);
  Table t{"worked-examples", "checks", {"check", "description", "computed", "expected", "status"}, {}};
  o.all_pass = true;
  for (const auto& c : run_worked_examples(expected)) {
    o.all_pass = o.all_pass && c.pass;
    t.rows.push_back({Cell(c.id), Cell(c.description), Cell(c.computed), Cell(c.expected),
                      Cell(c.pass ? "PASS" : "FAIL", c.pass ? Cell::Style::Good : Cell::Style::Bad)});
  }
  o.report.tables.push_back(std::move(t));
  return o;
}

ExpectedTable load_expectations(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open expected-value file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto text = buf.str();

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (!doc.is_object()) throw SchemaError("/", "expected an object keyed by check id");

  auto table = default_expectations();
  for (const auto& [id, entry] : doc.items()) {
    const auto at = "/" + id;
    if (!table.contains(id)) throw SchemaError(at, "unknown check '" + id + "'");
    if (!entry.is_object()) throw SchemaError(at, "expected an object");
    Expectation e;
    for (const auto& [key, v] : entry.items()) {
      const auto where = at + "/" + key;
      if (key == "exact") {
        if (v.is_string()) e.exact = v.get<std::string>();
        else if (v.is_number_unsigned()) e.exact = std::to_string(v.get<std::uint64_t>());
        else throw SchemaError(where, "expected an integer or digit string");
      } else if (key == "value") {
        if (!v.is_number()) throw SchemaError(where, "expected a number");
        e.value = v.get<double>();
      } else if (key == "tolerance") {
        if (!v.is_number() || v.get<double>() < 0.0) throw SchemaError(where, "expected a non-negative number");
        e.tolerance = v.get<double>();
      } else if (key == "text") {
        if (!v.is_string()) throw SchemaError(where, "expected a string");
        e.text = v.get<std::string>();
      } else {
        throw SchemaError(where, "unknown key '" + key + "'");
      }
    }
    table[id] = e;
  }
  return table;
}

}  // namespace requisite
