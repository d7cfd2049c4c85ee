#include <benchmark/benchmark.h>

#include <vector>

#include "abelprop/model.hpp"
#include "abelprop/reduction.hpp"
#include "abelprop/reversion.hpp"
#include "abelprop/series.hpp"
#include "abelprop/solution.hpp"

namespace {

const abelprop::ModelParams kDemo{8.0, 0.7, 1.3, 26.55, 1.0, 1.5, 1.5, 2.5};
const abelprop::State kDemoS0{0.1, 0.08, 2.32};

void BM_rk4_reference(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            abelprop::integrate_reference(kDemo, kDemoS0, 0.0, 1.0, 1e-3));
    }
}
BENCHMARK(BM_rk4_reference);

void BM_mu_convolution(benchmark::State& state) {
    const auto n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(abelprop::mu_coeffs(0.2, 1.4, 3.9, n));
    }
}
BENCHMARK(BM_mu_convolution)->Arg(24)->Arg(64);

void BM_partitions(benchmark::State& state) {
    const auto m = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(abelprop::partitions(m));
    }
}
BENCHMARK(BM_partitions)->Arg(15)->Arg(23);

void BM_revert_double(benchmark::State& state) {
    const auto order = static_cast<int>(state.range(0));
    std::vector<double> sigma(static_cast<std::size_t>(order));
    sigma[0] = 1.5;
    for (std::size_t i = 1; i < sigma.size(); ++i)
        sigma[i] = 0.4 / static_cast<double>(i + 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(abelprop::revert<double>(sigma, order));
    }
}
BENCHMARK(BM_revert_double)->Arg(16)->Arg(24);

void BM_solve_series(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            abelprop::solve_series(kDemo, kDemoS0, 0.0, 2.0, 24, '-', true));
    }
}
BENCHMARK(BM_solve_series);

}  // namespace

BENCHMARK_MAIN();
