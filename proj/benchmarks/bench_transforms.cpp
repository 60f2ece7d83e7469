#include <benchmark/benchmark.h>

#include "maass/transforms.hpp"

using namespace maass::transforms;

static void BesselTransformBuild(benchmark::State& state) {
    for (auto _ : state) {
        BesselTransform bt(WindowKernel(12.0, 3.0), 1e-10);
        benchmark::DoNotOptimize(bt.g_tilde(1.0));
    }
}
BENCHMARK(BesselTransformBuild);

static void GTransformEval(benchmark::State& state) {
    static BesselTransform bt(WindowKernel(50.0, 10.0), 1e-10);
    double x = double(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(bt.g(x));
}
BENCHMARK(GTransformEval)->Arg(1)->Arg(500)->Arg(5000);
