#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "random_scenario.hpp"
#include "requisite/errors.hpp"
#include "requisite/replication.hpp"

#include <random>

using namespace requisite;

namespace {

bool same(const SimMetrics& a, const SimMetrics& b) {
  return a.time_to_first_compromise == b.time_to_first_compromise &&
         a.compromised_fraction == b.compromised_fraction &&
         a.clean_fraction == b.clean_fraction && a.successful_attacks == b.successful_attacks &&
         a.exploits_developed == b.exploits_developed && a.availability == b.availability;
}

Scenario strict_template(double t_dev) {
  Scenario s;
  s.horizon = 500.0;
  s.attacker.scan_interval = 1.0;
  s.attacker.scan_timing = ScanTiming::Exponential;
  s.attacker.exploit_dev_time = DurationDist::constant(t_dev);
  s.defender.space = ConfigSpace(32);
  return s;
}

}  // namespace

TEST_CASE("parallel replication matches the serial reference") {
  std::mt19937_64 gen(17);
  for (int i = 0; i < 20; ++i) {
    const auto s = testing::random_scenario(gen);
    const auto base = gen();
    const auto par = replicate(s, base, 64);
    const auto ser = replicate_serial(s, base, 64);
    REQUIRE(par.size() == ser.size());
    for (std::size_t k = 0; k < par.size(); ++k) REQUIRE(same(par[k], ser[k]));
  }
}

TEST_CASE("summaries") {
  SimMetrics a;
  a.compromised_fraction = 0.2;
  a.time_to_first_compromise = 4.0;
  a.successful_attacks = 1;
  SimMetrics b;
  b.compromised_fraction = 0.4;

  SUBCASE("single run") {
    const std::vector<SimMetrics> one{a};
    const auto s = summarize(one);
    CHECK(s.runs == 1);
    CHECK(s.compromised_fraction.mean == 0.2);
    CHECK(s.compromised_fraction.stddev == 0.0);
    CHECK(s.compromised_fraction.ci_low == 0.2);
    CHECK(s.time_to_first_compromise.mean == 4.0);
  }
  SUBCASE("two runs") {
    const std::vector<SimMetrics> two{a, b};
    const auto s = summarize(two);
    CHECK(s.compromised_fraction.mean == doctest::Approx(0.3));
    // sample sd of {0.2, 0.4}
    CHECK(s.compromised_fraction.stddev == doctest::Approx(0.1414213562373095));
    CHECK(s.ttfc_excluded == 1);
    CHECK(s.time_to_first_compromise.mean == 4.0);
    CHECK(s.compromise_probability == 0.5);
  }
  SUBCASE("empty") { CHECK_THROWS_AS(summarize({}), DomainError); }
}

TEST_CASE("sweep") {
  const auto s = strict_template(4.0);

  SUBCASE("one value, one replication equals a single run") {
    const std::vector<double> values{10.0};
    const auto rows = sweep(s, SweepParameter::ReconfigPeriod, values, 1, 77);
    REQUIRE(rows.size() == 1);
    auto direct = s;
    direct.defender.policy = ReconfigPolicy::periodic(10.0);
    const auto m = run(direct, 77).metrics;
    CHECK(rows[0].aggregate.compromised_fraction.mean == m.compromised_fraction);
    CHECK(rows[0].aggregate.successful_attacks.mean == static_cast<double>(m.successful_attacks));
  }
  SUBCASE("reproducible") {
    const std::vector<double> values{2.0, 8.0};
    const auto a = sweep(s, SweepParameter::ReconfigPeriod, values, 30, 5);
    const auto b = sweep(s, SweepParameter::ReconfigPeriod, values, 30, 5);
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].aggregate.compromised_fraction.mean == b[i].aggregate.compromised_fraction.mean);
      CHECK(a[i].aggregate.exploits_developed.mean == b[i].aggregate.exploits_developed.mean);
    }
  }
  SUBCASE("step at the development time") {
    const std::vector<double> values{2.0, 3.0, 3.9, 4.5, 6.0, 8.0};
    const auto rows = sweep(s, SweepParameter::ReconfigPeriod, values, 100, 1);
    for (const auto& row : rows) {
      CAPTURE(row.value);
      if (row.value < 4.0) {
        CHECK(row.aggregate.compromise_probability == 0.0);
      } else {
        CHECK(row.aggregate.compromise_probability > 0.0);
      }
    }
  }
  SUBCASE("other parameters") {
    const std::vector<double> pools{1.0, 4.0};
    CHECK(sweep(s, SweepParameter::PoolSize, pools, 3, 0).size() == 2);
    const std::vector<double> probs{0.0, 0.5, 1.0};
    CHECK(sweep(s, SweepParameter::DetectionProb, probs, 3, 0).size() == 3);
    const std::vector<double> bad{2.5};
    CHECK_THROWS_AS(sweep(s, SweepParameter::PoolSize, bad, 3, 0), ValidationError);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(sweep(s, SweepParameter::ReconfigPeriod, {}, 3, 0), DomainError);
    const std::vector<double> values{1.0};
    CHECK_THROWS_AS(sweep(s, SweepParameter::ReconfigPeriod, values, 0, 0), DomainError);
  }
}
