#include <benchmark/benchmark.h>

#include "synergy/bounds.hpp"
#include "synergy/combinatorics.hpp"
#include "synergy/decoder.hpp"
#include "synergy/scheduler.hpp"
#include "synergy/simulator.hpp"

namespace {

using namespace synergy;

void BM_Harmonic(benchmark::State& state) {
  const auto n = static_cast<unsigned long>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(harmonic(n));
}
BENCHMARK(BM_Harmonic)->RangeMultiplier(10)->Range(10, 100000);

void BM_PlanPhases(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto config = SystemConfig::from_gamma(k, k, 1);
  const std::vector<int> demand(static_cast<std::size_t>(k), 1);
  for (auto _ : state) benchmark::DoNotOptimize(plan_phases(config, demand));
}
BENCHMARK(BM_PlanPhases)->Arg(8)->Arg(16)->Arg(64);

void BM_DeliverAndDecode(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const int g = static_cast<int>(state.range(1));
  const auto config = SystemConfig::from_gamma(k, k, g);
  std::vector<int> demand;
  for (int i = 1; i <= k; ++i) demand.push_back(i);
  const auto plan = plan_phases(config, demand);
  const Library library = generate_library(config, 1);
  std::uint64_t uses = 0;
  for (auto _ : state) {
    const Transcript tr = run_delivery(plan, library, 1, {.resample_degenerate = true});
    benchmark::DoNotOptimize(verify_all(tr, library));
    uses += tr.uses.size();
  }
  state.counters["uses/s"] = benchmark::Counter(static_cast<double>(uses), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_DeliverAndDecode)->Args({4, 1})->Args({5, 2})->Args({6, 1})->Unit(benchmark::kMillisecond);

void BM_GapCertificate(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gap_certificate(k));
}
BENCHMARK(BM_GapCertificate)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
