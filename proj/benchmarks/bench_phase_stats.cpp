#include <benchmark/benchmark.h>

#include <random>

#include "phasekit/phase_stats.hpp"
#include "phasekit/states.hpp"

using namespace phasekit;

static ModeExpansion random_state(std::size_t n_modes) {
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> gauss;
    std::vector<cplx> c(n_modes);
    for (auto& z : c) z = {gauss(rng), gauss(rng)};
    ModeExpansion st(-std::int64_t(n_modes) / 2, std::move(c));
    st.renormalize();
    return st;
}

static void BM_windowed_stats(benchmark::State& state) {
    const auto st = random_state(std::size_t(state.range(0)));
    const WindowAnalyzer an(st);
    double alpha = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(an.stats(alpha));
        alpha += 1e-3;
    }
}
BENCHMARK(BM_windowed_stats)->RangeMultiplier(4)->Range(16, 4096);

static void BM_analyzer_build(benchmark::State& state) {
    const auto st = random_state(std::size_t(state.range(0)));
    for (auto _ : state) {
        WindowAnalyzer an(st);
        benchmark::DoNotOptimize(an.variance(0.0));
    }
}
BENCHMARK(BM_analyzer_build)->RangeMultiplier(4)->Range(16, 16384);

static void BM_phase_uncertainty(benchmark::State& state) {
    const auto st = random_state(std::size_t(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(phase_uncertainty(st, 512));
}
BENCHMARK(BM_phase_uncertainty)->RangeMultiplier(4)->Range(16, 1024);

static void BM_grid_oracle(benchmark::State& state) {
    const auto st = random_state(16);
    const std::size_t n = std::size_t(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(grid_oracle(st, n, n));
}
BENCHMARK(BM_grid_oracle)->RangeMultiplier(2)->Range(256, 4096)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
