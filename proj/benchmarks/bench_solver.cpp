#include <benchmark/benchmark.h>

#include "maass/forms.hpp"

using namespace maass::forms;

static void SolveFirstOdd(benchmark::State& state) {
    for (auto _ : state) {
        SolveOptions opt;
        opt.precision_target = 1e-8;
        opt.n_coeff = 40;
        opt.with_rho1 = false;
        benchmark::DoNotOptimize(solve_spectrum(9.45, 9.6, Parity::Odd, opt));
    }
}
BENCHMARK(SolveFirstOdd)->Unit(benchmark::kMillisecond);

static void EvaluatePoint(benchmark::State& state) {
    static CoefficientCache cache = [] {
        SolveOptions opt;
        opt.precision_target = 1e-9;
        opt.n_coeff = 60;
        opt.with_rho1 = false;
        return solve_spectrum(13.6, 13.9, Parity::Even, opt);
    }();
    const auto& f = cache.records.at(0);
    double y = 1.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(f.evaluate_raw({0.25, y}));
        y = y < 2.0 ? y + 1e-4 : 1.0;
    }
}
BENCHMARK(EvaluatePoint);
