#include <benchmark/benchmark.h>

#include <random>

#include "phasekit/mode_expansion.hpp"
#include "phasekit/series.hpp"
#include "phasekit/states.hpp"

using namespace phasekit;

static void BM_poisson_kernel(benchmark::State& state) {
    const double eps = 1.0 / double(state.range(0));
    double theta = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(poisson_kernel(theta, eps));
        theta += 1e-4;
    }
}
BENCHMARK(BM_poisson_kernel)->Range(10, 100000);

static void BM_regularized_unit_sum(benchmark::State& state) {
    const double eps = 1.0 / double(state.range(0));
    const auto rule = [](std::int64_t) { return cplx{1.0, 0.0}; };
    for (auto _ : state) benchmark::DoNotOptimize(regularized_sum(rule, 0.7, eps));
}
BENCHMARK(BM_regularized_unit_sum)->Range(10, 10000)->Unit(benchmark::kMicrosecond);

static ModeExpansion dense_state(std::size_t n_modes) {
    std::mt19937_64 rng(777);
    std::normal_distribution<double> gauss;
    std::vector<cplx> c(n_modes);
    for (auto& z : c) z = {gauss(rng), gauss(rng)};
    ModeExpansion st(0, std::move(c));
    st.renormalize();
    return st;
}

static void BM_density_fourier_direct(benchmark::State& state) {
    const auto st = dense_state(std::size_t(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(density_fourier(st, SpectrumMethod::direct));
}
BENCHMARK(BM_density_fourier_direct)
    ->RangeMultiplier(4)
    ->Range(64, 16384)
    ->Unit(benchmark::kMicrosecond);

static void BM_density_fourier_fft(benchmark::State& state) {
    const auto st = dense_state(std::size_t(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(density_fourier(st, SpectrumMethod::fft));
}
BENCHMARK(BM_density_fourier_fft)
    ->RangeMultiplier(4)
    ->Range(64, 65536)
    ->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
