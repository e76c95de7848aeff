#include <benchmark/benchmark.h>

#include "knotbb/elastic.hpp"

using namespace knotbb::elastic;

static void BM_TotalEnergy(benchmark::State& state) {
    const auto c = braid_torus_init({0.3, static_cast<int>(state.range(0)), 3, 2, ""});
    for (auto _ : state) benchmark::DoNotOptimize(total_energy(c, 1e-3));
}
BENCHMARK(BM_TotalEnergy)->Arg(128)->Arg(256)->Arg(512);

static void BM_Gradient(benchmark::State& state) {
    const auto c = braid_torus_init({0.3, static_cast<int>(state.range(0)), 3, 2, ""});
    for (auto _ : state) benchmark::DoNotOptimize(gradient(c, 1e-3));
}
BENCHMARK(BM_Gradient)->Arg(128)->Arg(256);
