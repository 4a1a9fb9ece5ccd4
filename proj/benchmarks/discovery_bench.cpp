#include <benchmark/benchmark.h>

#include "lpmabs/conformance.hpp"
#include "lpmabs/discovery.hpp"
#include "lpmabs/generator.hpp"
#include "lpmabs/lpm_discovery.hpp"

using namespace lpmabs;

namespace {

EventLog planted_log(std::size_t traces) {
  GeneratorSpec spec;
  spec.patterns = {ProcessTree::parse("seq(a,b,c)"), ProcessTree::parse("and(d,e)")};
  spec.traces = traces;
  spec.max_instances = 2;
  spec.noise = 0.3;
  spec.seed = 7;
  return generate_log(spec);
}

void BM_DiscoverLpms(benchmark::State& state) {
  auto log = planted_log(100);
  LpmSearchParams params;
  params.max_activities = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(discover_lpms(log, params).size());
}

void BM_InductiveMiner(benchmark::State& state) {
  auto log = planted_log(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(discover_model(log).node_count());
}

void BM_Evaluate(benchmark::State& state) {
  auto log = planted_log(static_cast<std::size_t>(state.range(0)));
  auto net = tree_to_net(discover_model(log));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(log, net).f_score);
}

}  // namespace

BENCHMARK(BM_DiscoverLpms)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_InductiveMiner)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Evaluate)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
