#include "tnet/harness.hpp"
#include "tnet/netgen.hpp"

#include <benchmark/benchmark.h>

namespace {

tnet::netgen::GenSpec bench_spec()
{
    tnet::netgen::GenSpec spec;
    spec.nodeCount = 200;
    spec.windowCount = 200;
    spec.params = tnet::netgen::from_window_density(0.1, 0.2, 288);
    spec.seed = 7;
    return spec;
}

void BM_GenerateSerial(benchmark::State& state)
{
    const auto spec = bench_spec();
    for (auto _ : state) benchmark::DoNotOptimize(tnet::netgen::generate_serial(spec));
}

void BM_GenerateParallel(benchmark::State& state)
{
    const auto spec = bench_spec();
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(tnet::netgen::generate(spec, threads));
}

void BM_Scenario(benchmark::State& state)
{
    auto s = *tnet::harness::find_scenario("attendance-s2");
    s.iterations = 50;
    tnet::harness::NetworkCache cache;
    tnet::harness::warm_cache(s, cache);
    const tnet::harness::RunConfig config{static_cast<int>(state.range(0)), &cache};
    for (auto _ : state) benchmark::DoNotOptimize(tnet::harness::run_scenario(s, config));
}

} // namespace

BENCHMARK(BM_GenerateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GenerateParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Scenario)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
