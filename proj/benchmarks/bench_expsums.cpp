#include <benchmark/benchmark.h>

#include "maass/expsums.hpp"

using namespace maass::expsums;

static void Kloosterman(benchmark::State& state) {
    std::int64_t c = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(kloosterman(2, 3, c));
    state.SetComplexityN(c);
}
BENCHMARK(Kloosterman)->Range(64, 8192)->Complexity();

static void TwistedDirect(benchmark::State& state) {
    TwistedSumParams p(99, 2, 5, 5, 1);
    for (auto _ : state) benchmark::DoNotOptimize(twisted_sum_direct(p));
}
BENCHMARK(TwistedDirect);

static void TwistedEvaluated(benchmark::State& state) {
    TwistedSumParams p(99, 2, 5, 5, 1);
    for (auto _ : state) benchmark::DoNotOptimize(twisted_sum_evaluated(p));
}
BENCHMARK(TwistedEvaluated);
