#include <benchmark/benchmark.h>

#include "maass/bessel.hpp"

using namespace maass;

static void KBesselSeries(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(bessel::k_imag_scaled(25.0, 8.0));
}
BENCHMARK(KBesselSeries);

static void KBesselOscillatory(benchmark::State& state) {
    double t = double(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(bessel::k_imag_scaled(t, 0.8 * t));
}
BENCHMARK(KBesselOscillatory)->Arg(10)->Arg(40)->Arg(200);

static void KBesselSaddle(benchmark::State& state) {
    double t = double(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(bessel::k_imag_scaled(t, 2.0 * t + 20.0));
}
BENCHMARK(KBesselSaddle)->Arg(10)->Arg(40)->Arg(200);

static void JBesselScaled(benchmark::State& state) {
    double x = double(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(bessel::j_imag_scaled(60.0, x));
}
BENCHMARK(JBesselScaled)->Arg(10)->Arg(300)->Arg(5000);

BENCHMARK_MAIN();
