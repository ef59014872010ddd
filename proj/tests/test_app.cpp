#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "requisite/commands.hpp"
#include "requisite/errors.hpp"
#include "requisite/report.hpp"
#include "requisite/scenario_file.hpp"

#include <nlohmann/json.hpp>

#include <clocale>
#include <filesystem>
#include <sstream>
#include <string>

using namespace requisite;

namespace {

const std::filesystem::path kFixtures = REQUISITE_FIXTURES;

std::string wrap(const std::string& request) {
  return R"({"schema_version": 1, "requests": [)" + request + "]}";
}

std::string sim(const std::string& scenario, const std::string& unit = "hour") {
  return wrap(R"({"type": "simulation", "time_unit": ")" + unit + R"(", "scenario": )" + scenario + "}");
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("minimal file parses") {
  const auto f = parse_scenario(kFixtures / "minimal.json");
  REQUIRE(f.requests.size() == 1);
  const auto& v = std::get<VarietyRequest>(f.requests[0]);
  CHECK(v.name == "vectors");
  CHECK(v.symbols.size() == 4);
  CHECK(v.length == 10);
  CHECK(v.max_step == 1);
  CHECK(f.digest != 0);
}

TEST_CASE("diagnostics") {
  SUBCASE("unknown key names its path") {
    try {
      parse_scenario(kFixtures / "unknown_key.json");
      FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
      CHECK(e.path() == "/requests/0/scenario/atacker");
      CHECK(std::string(e.what()).find("atacker") != std::string::npos);
    }
  }
  SUBCASE("durations need units") {
    CHECK_THROWS_AS(parse_scenario(kFixtures / "missing_unit.json"), UnitError);
  }
  SUBCASE("durations must use the declared unit") {
    CHECK_THROWS_AS(parse_scenario(kFixtures / "mixed_units.json"), UnitMismatchError);
  }
  SUBCASE("syntax errors report a line") {
    try {
      parse_scenario(kFixtures / "bad_syntax.json");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("line 4") != std::string::npos);
    }
  }
  SUBCASE("invalid values are validation errors") {
    CHECK_THROWS_AS(parse_scenario(kFixtures / "invalid_value.json"), ValidationError);
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(parse_scenario(kFixtures / "absent.json"), FileError); }
  SUBCASE("schema version") {
    CHECK_THROWS_AS(parse_scenario_text(R"({"schema_version": 2, "requests": []})"), SchemaError);
    CHECK_THROWS_AS(parse_scenario_text(R"({"requests": []})"), SchemaError);
    CHECK_THROWS_AS(parse_scenario_text(R"({"schema_version": 1, "requests": []})"), SchemaError);
  }
  SUBCASE("type errors") {
    CHECK_THROWS_AS(parse_scenario_text(wrap(R"({"type": "variety", "alphabet": "4", "length": 3})")),
                    SchemaError);
    CHECK_THROWS_AS(parse_scenario_text(wrap(R"({"type": "bogus"})")), SchemaError);
    CHECK_THROWS_AS(parse_scenario_text(sim(R"({"horizon": "10 hour", "validity": "loose"})")), SchemaError);
    CHECK_THROWS_AS(parse_scenario_text(sim(R"({"horizon": "10 hour", "defender": {"detection_prob": 2}})")),
                    SchemaError);
    CHECK_THROWS_AS(parse_scenario_text(wrap(R"({"type": "entropy", "probabilities": [0.5, 0.6]})")),
                    ValidationError);
  }
}

TEST_CASE("scenario mapping") {
  SUBCASE("custom") {
    const auto f = parse_scenario_text(sim(R"({
      "horizon": "50 hour", "pool_size": 3, "validity": "value_match",
      "attacker": {"scan_interval": "2 hour", "scan_timing": "exponential",
                   "exploit_dev_time": {"exponential": "3 hour"}, "retry": false,
                   "mismatch_success_prob": 0.1, "bypass_prob": 0.2,
                   "continue_while_compromised": true, "offline_target": 1},
      "defender": {"configs": 4, "per_move_entropy": 1.5,
                   "policy": {"kind": "poly_periodic", "periods": ["2 hour", "3 hour"]},
                   "draw_mode": "uniform", "detection_prob": 0.4,
                   "detection_delay": {"constant": "1 hour"}, "reset_latency": "0.5 hour",
                   "persistence_prob": 0.3, "scheduled_reset_period": "12 hour"}})"));
    const auto& r = std::get<SimulationRequest>(f.requests[0]);
    const auto& s = r.scenario;
    CHECK(r.time_unit == TimeUnit::Hour);
    CHECK(s.horizon == 50.0);
    CHECK(s.pool_size == 3);
    CHECK(s.validity == ExploitValidity::ValueMatch);
    CHECK(s.attacker.scan_interval == 2.0);
    CHECK(s.attacker.scan_timing == ScanTiming::Exponential);
    CHECK(s.attacker.exploit_dev_time.kind == DurationDist::Kind::Exponential);
    CHECK(s.attacker.exploit_dev_time.value == 3.0);
    CHECK_FALSE(s.attacker.retry);
    CHECK(s.attacker.bypass_prob == 0.2);
    CHECK(s.attacker.offline_target == 1);
    CHECK(s.defender.space.size() == 4);
    CHECK(s.defender.space.per_move_entropy() == 1.5);
    CHECK(classify(s.defender.policy) == ProcessKind::PolyCyclostationary);
    CHECK(s.defender.draw_mode == DrawMode::Uniform);
    CHECK(s.defender.reset_latency == 0.5);
    CHECK(s.defender.scheduled_reset_period == 12.0);
  }
  SUBCASE("kiosk preset") {
    const auto f = parse_scenario_text(sim(
        R"({"preset": "kiosk", "horizon": "100 minute", "attack_rate": "2/minute", "detection_prob": 0.5})",
        "minute"));
    const auto& s = std::get<SimulationRequest>(f.requests[0]).scenario;
    CHECK(s.attacker.scan_timing == ScanTiming::Exponential);
    CHECK(s.attacker.scan_interval == 0.5);
    CHECK(s.defender.detection_prob == 0.5);
    CHECK_THROWS_AS(
        parse_scenario_text(sim(R"({"preset": "kiosk", "horizon": "100 hour", "attack_rate": "2/minute"})")),
        UnitMismatchError);
  }
  SUBCASE("pool preset") {
    const auto f = parse_scenario_text(
        sim(R"({"preset": "mtd_pool", "horizon": "100 hour", "pool_size": 8, "configs": 8, "reset_period": "24 hour"})"));
    const auto& s = std::get<SimulationRequest>(f.requests[0]).scenario;
    CHECK(s.pool_size == 8);
    CHECK(s.defender.scheduled_reset_period == 24.0);
    CHECK_THROWS_AS(parse_scenario_text(sim(R"({"preset": "mtd_pool", "horizon": "100 hour", "pool_size": 1})")),
                    ValidationError);
  }
  SUBCASE("big counts as digit strings") {
    const auto f = parse_scenario_text(wrap(R"({"type": "components", "counts": ["340282366920938463463374607431768211456", 2]})"));
    const auto report = run_scenario_file(f, {});
    CHECK(report.tables[0].rows[0][1].value == Cell(std::string("680564733841876926926749214863536422912")).value);
    CHECK(std::get<double>(report.tables[0].rows[0][2].value) == 129.0);
  }
}

TEST_CASE("general scenario report") {
  const auto f = parse_scenario(kFixtures / "general.json");
  const auto r = run_scenario_file(f, {"run", "general.json", std::nullopt, false});
  REQUIRE(r.tables.size() == 2);
  const auto& verdict = r.tables[1];
  CHECK(verdict.title == "verdict");
  CHECK(std::get<double>(verdict.rows[0][1].value) == 1e7);
  CHECK(std::get<double>(verdict.rows[0][2].value) == 576000.0);
  CHECK(std::get<double>(verdict.rows[0][4].value) == doctest::Approx(17.36).epsilon(0.001));
  CHECK(std::get<std::string>(verdict.rows[0][6].value) == "insufficient");
  const auto table = render(r, Format::Table);
  CHECK(table.find("17.36") != std::string::npos);
}

TEST_CASE("sweep reports one row per value") {
  const auto f = parse_scenario(kFixtures / "sweep.json");
  RunOptions sweep_only{"sweep", "sweep.json", std::nullopt, true};
  const auto r = run_scenario_file(f, sweep_only);
  REQUIRE(r.tables.size() == 1);
  CHECK(r.tables[0].rows.size() == 4);

  const auto minimal = parse_scenario(kFixtures / "minimal.json");
  CHECK_THROWS_AS(run_scenario_file(minimal, sweep_only), ValidationError);
}

TEST_CASE("structured output is reproducible and seeded") {
  const auto f = parse_scenario(kFixtures / "showcase.json");
  const RunOptions opts{"run", "showcase.json", std::nullopt, false};
  const auto a = render(run_scenario_file(f, opts), Format::Jsonl);
  const auto b = render(run_scenario_file(f, opts), Format::Jsonl);
  CHECK(a == b);

  RunOptions reseeded = opts;
  reseeded.seed = 99;
  CHECK(render(run_scenario_file(f, reseeded), Format::Jsonl) != a);

  const auto rows = lines(a);
  const auto meta = nlohmann::json::parse(rows.front());
  CHECK(meta["record"] == "meta");
  CHECK(meta["schema_version"] == kReportSchemaVersion);
  CHECK(meta["seed"] == 2024);
  CHECK(meta["digest"].get<std::string>().size() == 16);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(nlohmann::json::parse(rows[i])["record"] == "row");
}

TEST_CASE("csv layout") {
  Report r;
  r.tables.push_back({"a", "t1", {"x", "y"}, {{Cell(0.5), Cell("p,q")}, {Cell::null(), Cell(true)}}});
  r.tables.push_back({"b", "t2", {"z"}, {{Cell(std::uint64_t{7})}}});
  const auto rows = lines(render(r, Format::Csv));
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == "request,table,x,y");
  CHECK(rows[1] == "a,t1,0.5,\"p,q\"");
  CHECK(rows[2] == "a,t1,,true");
  CHECK(rows[3].empty());
  CHECK(rows[4] == "request,table,z");
  CHECK(rows[5] == "b,t2,7");
}

TEST_CASE("number formatting ignores the C locale") {
  const char* previous = std::setlocale(LC_ALL, nullptr);
  const std::string saved = previous ? previous : "C";
  for (const char* name : {"de_DE.UTF-8", "fr_FR.UTF-8", "C"}) {
    std::setlocale(LC_ALL, name);
    CHECK(format_double(17.361111111111111) == "17.36111111111111");
    CHECK(format_double(0.25) == "0.25");
  }
  std::setlocale(LC_ALL, saved.c_str());
}

TEST_CASE("worked examples") {
  const auto ok = worked_examples_report(default_expectations());
  CHECK(ok.all_pass);
  CHECK(ok.report.tables[0].rows.size() == 11);

  const auto tampered = load_expectations(kFixtures / "tampered_expected.json");
  CHECK_FALSE(worked_examples_report(tampered).all_pass);

  auto missing = default_expectations();
  missing.erase("verdict");
  CHECK_FALSE(worked_examples_report(missing).all_pass);
}

TEST_CASE("bound report") {
  const auto r = bound_report(20.0, parse_rate("2/hour"), 1.0);
  CHECK(std::get<double>(r.tables[0].rows[0][3].value) == 10.0);
  CHECK(std::get<std::string>(r.tables[0].rows[0][4].value) == "hours");
  const auto u = bound_report(20.0, parse_rate("0/hour"), 1.0);
  CHECK(std::get<std::string>(u.tables[0].rows[0][3].value) == "unbounded");
  CHECK_THROWS_AS(bound_report(20.0, parse_rate("2/hour"), 0.5), DomainError);
}
