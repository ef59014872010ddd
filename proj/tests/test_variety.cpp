#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "requisite/errors.hpp"
#include "requisite/variety.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <vector>

using namespace requisite;

namespace {

// Test-local enumeration, independent of the library's enumerators.
std::uint64_t enumerate(std::size_t k, std::size_t n,
                        const std::function<bool(std::size_t, std::size_t)>& allowed,
                        const std::vector<bool>& initial) {
  std::uint64_t count = 0;
  std::vector<std::size_t> seq;
  std::function<void()> rec = [&] {
    if (seq.size() == n) {
      ++count;
      return;
    }
    for (std::size_t s = 0; s < k; ++s) {
      if (seq.empty() ? !initial[s] : !allowed(seq.back(), s)) continue;
      seq.push_back(s);
      rec();
      seq.pop_back();
    }
  };
  rec();
  return count;
}

std::uint64_t enumerate_adjacent(std::size_t n) {
  return enumerate(
      4, n, [](std::size_t p, std::size_t s) { return (p > s ? p - s : s - p) <= 1; },
      std::vector<bool>(4, true));
}

SequenceSpace adjacent_space(std::size_t n) {
  return SequenceSpace(Alphabet::numbered(4), n, SuccessorConstraint::adjacent_within(4, 1));
}

struct RandomSpace {
  std::size_t k;
  std::size_t n;
  std::vector<bool> matrix;
  std::vector<bool> initial;
  bool use_initial;

  SequenceSpace space() const {
    return SequenceSpace(Alphabet::numbered(k), n, SuccessorConstraint(k, matrix),
                         use_initial ? std::optional(initial) : std::nullopt);
  }
};

RandomSpace random_space(std::mt19937_64& gen, std::size_t max_k, std::size_t max_n) {
  RandomSpace r;
  r.k = std::uniform_int_distribution<std::size_t>(1, max_k)(gen);
  r.n = std::uniform_int_distribution<std::size_t>(1, max_n)(gen);
  std::bernoulli_distribution density(std::uniform_real_distribution<double>(0.1, 0.9)(gen));
  r.matrix.resize(r.k * r.k);
  for (std::size_t i = 0; i < r.matrix.size(); ++i) r.matrix[i] = density(gen);
  r.initial.resize(r.k);
  for (std::size_t i = 0; i < r.k; ++i) r.initial[i] = density(gen);
  r.use_initial = std::bernoulli_distribution(0.3)(gen);
  return r;
}

}  // namespace

TEST_CASE("entropy of small distributions") {
  CHECK(entropy_bits(Distribution::uniform(4)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(entropy_bits(Distribution({1.0})) == 0.0);
  // -(0.5 log 0.5 + 2 * 0.25 log 0.25) = 0.5 + 1.0
  CHECK(entropy_bits(Distribution({0.5, 0.25, 0.25})) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(entropy_bits(Distribution({0.0, 1.0, 0.0})) == 0.0);
}

TEST_CASE("invalid distributions are rejected") {
  CHECK_THROWS_AS(Distribution({0.5, 0.6}), ValidationError);
  CHECK_THROWS_AS(Distribution({-0.1, 1.1}), ValidationError);
  CHECK_THROWS_AS(Distribution({}), ValidationError);
  CHECK_NOTHROW(Distribution({0.5, 0.5 + 5e-10}));
}

TEST_CASE("variety_bits") {
  CHECK(variety_bits(1048576) == 20.0);
  CHECK(variety_bits(1) == 0.0);
  CHECK(variety_bits(21892) == doctest::Approx(14.418).epsilon(1e-4));
  CHECK(std::abs(variety_bits(21892) - 14.4) < 0.05);
  CHECK_THROWS_AS(variety_bits(0), DomainError);
}

TEST_CASE("bits stay exact for counts beyond double precision") {
  Count big = 1;
  big <<= 200;
  CHECK(VarietyMeasure(big).bits() == 200.0);
  Count three_big = big * 3;
  CHECK(VarietyMeasure(three_big).bits() == doctest::Approx(200.0 + std::log2(3.0)).epsilon(1e-15));
  CHECK(VarietyMeasure(0).bits() == -std::numeric_limits<double>::infinity());
}

TEST_CASE("combined variety") {
  std::vector<Count> ten_fours(10, 4);
  const auto v = combined_variety(ten_fours);
  CHECK(v.count() == 1048576);
  CHECK(v.bits() == 20.0);

  std::vector<Count> one{4};
  CHECK(combined_variety(one).count() == 4);
  CHECK(combined_variety(one).bits() == 2.0);

  std::vector<Count> two_eight{2, 8};
  CHECK(combined_variety(two_eight).count() == 16);
  CHECK(combined_variety(two_eight).bits() == 4.0);

  CHECK_THROWS_AS(combined_variety(std::vector<Count>{}), DomainError);
  CHECK_THROWS_AS(combined_variety(std::vector<Count>{3, 0}), DomainError);
}

TEST_CASE("constrained sequence counts against hand enumeration") {
  // oracle values from the test-local enumerator
  REQUIRE(enumerate_adjacent(1) == 4);
  REQUIRE(enumerate_adjacent(2) == 10);
  REQUIRE(enumerate_adjacent(3) == 26);
  REQUIRE(enumerate_adjacent(10) == 21892);

  CHECK(variety_count(adjacent_space(1)).count() == 4);
  CHECK(variety_count(adjacent_space(2)).count() == 10);
  CHECK(variety_count(adjacent_space(3)).count() == 26);
  CHECK(variety_count(adjacent_space(10)).count() == 21892);
}

TEST_CASE("brute force count") {
  CHECK(brute_force_count(adjacent_space(3)) == 26);
  CHECK(brute_force_count(SequenceSpace(Alphabet::numbered(3), 4)) == 81);
  CHECK(brute_force_count(adjacent_space(10)) == 21892);
  CHECK(brute_force_count_parallel(adjacent_space(10)) == 21892);
}

TEST_CASE("brute force guard refuses oversized spaces") {
  // 4^12 = 16,777,216 > 10^7
  CHECK_THROWS_AS(brute_force_count(adjacent_space(12)), RefusalError);
  CHECK_THROWS_AS(brute_force_count_parallel(adjacent_space(12)), RefusalError);
  // 10^7 exactly is allowed
  CHECK_NOTHROW(brute_force_count(SequenceSpace(Alphabet::numbered(10), 7,
                                                SuccessorConstraint::adjacent_within(10, 0))));
}

TEST_CASE("closed form") {
  CHECK(fibonacci(21) == 10946);
  CHECK(adjacent_step_closed_form(10) == 21892);
  CHECK(adjacent_step_closed_form(1) == 4);
  CHECK(adjacent_step_closed_form(2) == 10);
  CHECK_THROWS_AS(adjacent_step_closed_form(0), DomainError);
  for (std::size_t n = 1; n <= 30; ++n) {
    CHECK(variety_count(adjacent_space(n)).count() == adjacent_step_closed_form(n));
  }
}

TEST_CASE("closed form holds far past 64-bit range") {
  const auto v = variety_count(adjacent_space(200));
  CHECK(v.count() == adjacent_step_closed_form(200));
  CHECK(v.count() > Count(std::numeric_limits<std::uint64_t>::max()));
}

TEST_CASE("type invariants") {
  CHECK_THROWS_AS(Alphabet({}), ValidationError);
  CHECK_THROWS_AS(Alphabet({"a", "a"}), ValidationError);
  CHECK_THROWS_AS(SequenceSpace(Alphabet::numbered(3), 0), ValidationError);
  CHECK_THROWS_AS(SequenceSpace(Alphabet::numbered(3), 2, SuccessorConstraint::unconstrained(4)),
                  ValidationError);
  CHECK_THROWS_AS(SuccessorConstraint(2, std::vector<bool>(3, true)), ValidationError);
}

TEST_CASE("initial symbol restriction") {
  // sequences of length 3 over |d|<=1 starting with symbol 1 ("a"): oracle count
  std::vector<bool> initial{true, false, false, false};
  const auto expected = enumerate(
      4, 3, [](std::size_t p, std::size_t s) { return (p > s ? p - s : s - p) <= 1; }, initial);
  const SequenceSpace space(Alphabet::numbered(4), 3, SuccessorConstraint::adjacent_within(4, 1),
                            initial);
  CHECK(variety_count(space).count() == expected);
  CHECK(brute_force_count(space) == expected);
}

TEST_CASE("property: transfer matrix equals brute force on random spaces") {
  std::mt19937_64 gen(20240611);
  for (int trial = 0; trial < 600; ++trial) {
    const auto r = random_space(gen, 5, 8);
    const auto space = r.space();
    const Count dp = variety_count(space).count();
    CAPTURE(trial);
    REQUIRE(dp == brute_force_count(space));
    REQUIRE(dp == brute_force_count_parallel(space));
  }
}

TEST_CASE("property: constraints never increase variety") {
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto r = random_space(gen, 6, 12);
    const auto space = r.space();
    REQUIRE(variety_count(space).count() <= variety_count(space.without_constraint()).count());
  }
}

TEST_CASE("property: entropy bounds") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 16)(gen);
    std::vector<double> w(k);
    double total = 0.0;
    for (auto& x : w) {
      x = std::bernoulli_distribution(0.2)(gen) ? 0.0
                                                 : std::uniform_real_distribution<double>(0, 1)(gen);
      total += x;
    }
    if (total == 0.0) w[0] = total = 1.0;
    for (auto& x : w) x /= total;
    const double h = entropy_bits(Distribution(w));
    REQUIRE(h >= 0.0);
    REQUIRE(h <= std::log2(static_cast<double>(k)) + 1e-9);
    REQUIRE(entropy_bits(Distribution::uniform(k)) ==
            doctest::Approx(std::log2(static_cast<double>(k))).epsilon(1e-9));
  }
}

TEST_CASE("property: bits are additive over components") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 40)(gen);
    std::vector<Count> counts;
    double sum_bits = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = std::uniform_int_distribution<std::uint64_t>(1, 1'000'000'000)(gen);
      counts.emplace_back(c);
      sum_bits += std::log2(static_cast<double>(c));
    }
    const auto v = combined_variety(counts);
    REQUIRE(v.bits() == doctest::Approx(sum_bits).epsilon(1e-9));
  }
}
