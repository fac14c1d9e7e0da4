// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "margraph/kernels.hpp"

namespace k = margraph::kernels;

namespace {

std::vector<double> random_values(std::size_t n) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

template <auto Kernel>
void BM_difference(benchmark::State& state) {
    const auto axes = static_cast<std::size_t>(state.range(0));
    const std::vector<std::size_t> radix(axes, 2), zero(axes, 0);
    const auto base = random_values(std::size_t{1} << axes);
    for (auto _ : state) {
        auto t = base;
        Kernel(t, radix, zero);
        benchmark::DoNotOptimize(t.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(base.size()));
}

template <auto Kernel>
void BM_neg_log_sum_exp(benchmark::State& state) {
    const auto outer = static_cast<std::size_t>(state.range(0));
    const auto inner = static_cast<std::size_t>(state.range(1));
    const auto a = random_values(outer * inner), b = random_values(outer * inner);
    std::vector<k::FactorSlice> factors(2);
    factors[0].values = a;
    factors[1].values = b;
    for (auto& f : factors) {
        for (std::size_t o = 0; o < outer; ++o) f.outer_offset.push_back(o * inner);
        for (std::size_t t = 0; t < inner; ++t) f.inner_offset.push_back(t);
    }
    std::vector<double> out(outer);
    for (auto _ : state) {
        Kernel(factors, outer, inner, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(outer * inner));
}

}  // namespace

BENCHMARK(BM_difference<&k::serial::zero_anchored_difference>)->Name("difference/serial")->DenseRange(12, 22, 5);
BENCHMARK(BM_difference<&k::omp::zero_anchored_difference>)->Name("difference/omp")->DenseRange(12, 22, 5);
BENCHMARK(BM_neg_log_sum_exp<&k::serial::neg_log_sum_exp>)
    ->Name("neg_log_sum_exp/serial")
    ->Args({8, 1 << 12})
    ->Args({64, 1 << 14});
BENCHMARK(BM_neg_log_sum_exp<&k::omp::neg_log_sum_exp>)
    ->Name("neg_log_sum_exp/omp")
    ->Args({8, 1 << 12})
    ->Args({64, 1 << 14});

BENCHMARK_MAIN();
