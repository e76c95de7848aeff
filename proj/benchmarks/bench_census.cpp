#include <benchmark/benchmark.h>

#include "knotbb/braidcensus.hpp"

using namespace knotbb::braidcensus;

static void BM_CanonicalScan(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        std::uint64_t classes = 0;
        for (std::uint32_t bits = 0; bits < (1u << n); ++bits)
            if (canonical_form(BraidWord{bits, n}) == BraidWord{bits, n}) ++classes;
        benchmark::DoNotOptimize(classes);
    }
    state.SetItemsProcessed(state.iterations() * (1ll << n));
}
BENCHMARK(BM_CanonicalScan)->Arg(12)->Arg(16)->Arg(20);

static void BM_Census(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(census(n));
}
BENCHMARK(BM_Census)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
