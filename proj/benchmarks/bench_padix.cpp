#include <benchmark/benchmark.h>

#include <cstdint>

#include "padix/analysis.hpp"
#include "padix/padic_int.hpp"
#include "padix/rational.hpp"
#include "padix/series.hpp"
#include "padix/valuation.hpp"

namespace {

using namespace padix;

void BM_VpFactorial(benchmark::State& state) {
    const std::uint64_t p = static_cast<std::uint64_t>(state.range(0));
    std::uint64_t n = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(vp_factorial(n, p));
        n = n % 1000000 + 1;
    }
}
BENCHMARK(BM_VpFactorial)->Arg(2)->Arg(13);

void BM_AddTraced(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const PAdicInt a = sum_series(SeriesKind::alpha, 3, n);
    const PAdicInt b = rational_to_padic(Rational(BigInt(1), BigInt(7)), 3, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(add(a, b));
    }
    state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_AddTraced)->Range(64, 16384)->Complexity(benchmark::oN);

void BM_SumSeriesAlpha(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sum_series(SeriesKind::alpha, 2, n));
    }
    state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SumSeriesAlpha)->Range(256, 65536)->Complexity(benchmark::oN);

void BM_SumSeriesFactorial(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sum_series(SeriesKind::factorial, 2, n));
    }
}
BENCHMARK(BM_SumSeriesFactorial)->Range(64, 2048);

void BM_RationalToPadic(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const Rational q(BigInt(-355), BigInt(113));
    for (auto _ : state) {
        benchmark::DoNotOptimize(rational_to_padic(q, 5, n));
    }
}
BENCHMARK(BM_RationalToPadic)->Range(256, 16384);

void BM_DetectPeriod(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const PAdicInt alpha = sum_series(SeriesKind::alpha, 3, n);
    const DetectBounds bounds{n / 4, n / 8, 3};
    for (auto _ : state) {
        benchmark::DoNotOptimize(detect_eventual_period(alpha.digits(), 3, bounds));
    }
    state.SetComplexityN(static_cast<std::int64_t>(n));
}
BENCHMARK(BM_DetectPeriod)->Range(512, 16384)->Complexity(benchmark::oN);

void BM_VerifyPackages(benchmark::State& state) {
    const std::uint64_t k_max = static_cast<std::uint64_t>(state.range(0));
    const std::size_t n = minimal_precision_for_packages(3, k_max);
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_packages(3, k_max, n));
    }
}
BENCHMARK(BM_VerifyPackages)->Range(64, 8192);

}  // namespace

BENCHMARK_MAIN();
