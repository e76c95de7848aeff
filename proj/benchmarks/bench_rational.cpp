#include <benchmark/benchmark.h>

#include <numeric>

#include "knotbb/rational.hpp"

using namespace knotbb;

static void BM_StandardCf(benchmark::State& state) {
    for (auto _ : state) {
        for (long long alpha = 2; alpha <= 500; ++alpha)
            for (long long beta = 1; beta < alpha; beta += 7) {
                if (std::gcd(alpha, beta) != 1) continue;
                benchmark::DoNotOptimize(standard_cf(Fraction(alpha, beta)));
            }
    }
}
BENCHMARK(BM_StandardCf);

static void BM_BraidIndexUnoriented(benchmark::State& state) {
    const long long alpha = state.range(0);
    long long beta = 2;
    while (std::gcd(alpha, beta) != 1) ++beta;
    for (auto _ : state) benchmark::DoNotOptimize(braid_index_unoriented(Fraction(alpha, beta)));
}
BENCHMARK(BM_BraidIndexUnoriented)->Arg(101)->Arg(1009)->Arg(10007);
