#include <benchmark/benchmark.h>

#include "aoi/metrics.hpp"
#include "aoi/oracles.hpp"
#include "aoi/random.hpp"
#include "aoi/simulation.hpp"

namespace {

void BM_Simulate(benchmark::State& state) {
  const auto d = static_cast<aoi::Discipline>(state.range(0));
  const aoi::SimulationConfig cfg{aoi::ArrivalProcess::exponential(0.5), aoi::ServiceDistribution::pareto(0.8, 1.5),
                                  d, static_cast<std::uint64_t>(state.range(1)), 0.1};
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto trace = aoi::run_simulation(cfg, seed++);
    benchmark::DoNotOptimize(trace.horizon);
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
  state.SetLabel(std::string(aoi::to_string(d)));
}
BENCHMARK(BM_Simulate)->ArgsProduct({{0, 1, 2, 3}, {100'000}})->Unit(benchmark::kMillisecond);

void BM_Metrics(benchmark::State& state) {
  const auto trace = aoi::run_simulation({aoi::ArrivalProcess::exponential(0.5),
                                          aoi::ServiceDistribution::exponential(0.8), aoi::Discipline::Fcfs,
                                          100'000, 0.1},
                                         1);
  for (auto _ : state) benchmark::DoNotOptimize(aoi::compute_metrics(trace).avg_age);
}
BENCHMARK(BM_Metrics)->Unit(benchmark::kMillisecond);

void BM_GGInf(benchmark::State& state) {
  const auto service = aoi::ServiceDistribution::pareto(0.8, 1.5);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        aoi::gginf_age_estimate(aoi::ArrivalProcess::exponential(0.5), service, 100'000, seed++).value);
  }
}
BENCHMARK(BM_GGInf)->Unit(benchmark::kMillisecond);

void BM_Sample(benchmark::State& state) {
  const aoi::ServiceDistribution services[] = {
      aoi::ServiceDistribution::exponential(0.8), aoi::ServiceDistribution::pareto(0.8, 1.5),
      aoi::ServiceDistribution::lognormal(0.8, 1.0), aoi::ServiceDistribution::weibull(0.8, 0.5)};
  const auto& s = services[state.range(0)];
  aoi::RandomStream rng(7);
  for (auto _ : state) benchmark::DoNotOptimize(s.sample(rng));
  state.SetLabel(s.describe());
}
BENCHMARK(BM_Sample)->DenseRange(0, 3);

void BM_WeibullExpectedMin(benchmark::State& state) {
  const auto s = aoi::ServiceDistribution::weibull(0.8, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(s.expected_min_with(4.0));
}
BENCHMARK(BM_WeibullExpectedMin);

}  // namespace

BENCHMARK_MAIN();
