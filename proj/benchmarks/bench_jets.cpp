#include "martinet/classify.hpp"

#include <benchmark/benchmark.h>

using namespace martinet;

namespace {

template <Scalar T>
Jet<T> sample_unit(std::size_t n)
{
    Jet<T> f(n);
    for (std::size_t i = 0; i <= n; ++i) {
        f[i] = T(static_cast<long>(i % 5) + 1) / T(static_cast<long>(i) + 2);
    }
    return f;
}

template <Scalar T>
Jet<T> sample_tangent(std::size_t n)
{
    Jet<T> g = sample_unit<T>(n);
    g[0] = T(0);
    g[1] = T(1);
    return g;
}

template <Scalar T>
void BM_Multiply(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = sample_unit<T>(n);
    const auto b = sample_tangent<T>(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(a * b);
    }
}

template <Scalar T>
void BM_Reciprocal(benchmark::State& state)
{
    const auto a = sample_unit<T>(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(reciprocal(a));
    }
}

template <Scalar T>
void BM_Compose(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto f = sample_unit<T>(n);
    const auto g = sample_tangent<T>(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compose(f, g));
    }
}

template <Scalar T>
void BM_Reversion(benchmark::State& state)
{
    const auto g = sample_tangent<T>(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(reversion(g));
    }
}

template <Scalar T>
void BM_NormalizeDegenerate(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    auto f = sample_unit<T>(n);
    f[0] = T(0);
    f[1] = T(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(normalize_degenerate(f));
    }
}

}  // namespace

BENCHMARK(BM_Multiply<double>)->Arg(16)->Arg(64);
BENCHMARK(BM_Multiply<Rational>)->Arg(16);
BENCHMARK(BM_Reciprocal<double>)->Arg(16)->Arg(64);
BENCHMARK(BM_Reciprocal<Rational>)->Arg(16);
BENCHMARK(BM_Compose<double>)->Arg(16)->Arg(64);
BENCHMARK(BM_Compose<Rational>)->Arg(8)->Arg(16);
BENCHMARK(BM_Reversion<double>)->Arg(16);
BENCHMARK(BM_Reversion<Rational>)->Arg(8);
BENCHMARK(BM_NormalizeDegenerate<double>)->Arg(8)->Arg(16);
BENCHMARK(BM_NormalizeDegenerate<Rational>)->Arg(8);

BENCHMARK_MAIN();
