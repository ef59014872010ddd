// Serial reference kernels against their OpenMP counterparts.

#include "requisite/replication.hpp"
#include "requisite/variety.hpp"

#include <benchmark/benchmark.h>

using namespace requisite;

namespace {

SequenceSpace space(std::int64_t n) {
  return SequenceSpace(Alphabet::numbered(4), static_cast<std::size_t>(n), SuccessorConstraint::adjacent_within(4, 1));
}

Scenario moving_target() {
  Scenario s;
  s.horizon = 2000.0;
  s.attacker.scan_interval = 1.0;
  s.attacker.scan_timing = ScanTiming::Exponential;
  s.attacker.exploit_dev_time = DurationDist::exponential(4.0);
  s.attacker.bypass_prob = 0.001;
  s.defender.space = ConfigSpace(32);
  s.defender.policy = ReconfigPolicy::pseudo_random(ExponentialIntervals{5.0});
  s.defender.detection_prob = 0.3;
  s.defender.detection_delay = DurationDist::constant(1.0);
  return s;
}

void BM_BruteForceSerial(benchmark::State& state) {
  const auto sp = space(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_count(sp));
}

void BM_BruteForceParallel(benchmark::State& state) {
  const auto sp = space(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_count_parallel(sp));
}

void BM_TransferCount(benchmark::State& state) {
  const auto sp = space(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(variety_count(sp));
}

void BM_ReplicateSerial(benchmark::State& state) {
  const auto s = moving_target();
  for (auto _ : state) benchmark::DoNotOptimize(replicate_serial(s, 0, static_cast<std::size_t>(state.range(0))));
}

void BM_ReplicateParallel(benchmark::State& state) {
  const auto s = moving_target();
  for (auto _ : state) benchmark::DoNotOptimize(replicate(s, 0, static_cast<std::size_t>(state.range(0))));
}

}  // namespace

BENCHMARK(BM_BruteForceSerial)->Arg(8)->Arg(11)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteForceParallel)->Arg(8)->Arg(11)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TransferCount)->Arg(11)->Arg(1000);
BENCHMARK(BM_ReplicateSerial)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ReplicateParallel)->Arg(256)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
