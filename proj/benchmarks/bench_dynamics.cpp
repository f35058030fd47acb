#include "martinet/dynamics.hpp"
#include "martinet/unfold.hpp"

#include <benchmark/benchmark.h>

using namespace martinet;

namespace {

void BM_Trajectory(benchmark::State& state)
{
    const auto field = f2_family(1.0, 1.0, 1.0);
    TrajectoryOptions o;
    o.t_end = 1.0;
    o.step = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_trajectory(field, {0.0, 0.1}, o));
    }
}

void BM_RealRoots(benchmark::State& state)
{
    const auto f = f2_generator(1.0, -0.02, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(real_roots(f.coeffs()));
    }
}

void BM_Portrait(benchmark::State& state)
{
    PortraitOptions o;
    o.grid = static_cast<std::size_t>(state.range(0));
    o.threads = 1;
    const auto f = f2_generator(1.0, 0.0, 1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(phase_portrait(f, o));
    }
}

void BM_Sweep(benchmark::State& state)
{
    for (auto _ : state) {
        benchmark::DoNotOptimize(bifurcation_sweep(1.0, 1.0, -0.2, 0.2, static_cast<std::size_t>(state.range(0))));
    }
}

}  // namespace

BENCHMARK(BM_Trajectory)->Arg(1000)->Arg(10000);
BENCHMARK(BM_RealRoots);
BENCHMARK(BM_Portrait)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Sweep)->Arg(401)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
