#include <benchmark/benchmark.h>

#include "fvol/estimator.hpp"
#include "fvol/kernels.hpp"
#include "fvol/market_sim.hpp"

namespace {

fvol::ObservedIncrements make_path(std::size_t m) {
    const fvol::PathConfig config{fvol::Partition::regular(m), fvol::VolatilityModel::sinusoidal_shift(1.0),
                                  fvol::JumpModel{2.0, fvol::MarkLaw::unit, true}};
    const auto path = fvol::simulate_path(config, 1);
    return fvol::ObservedIncrements::from_levels(path.times, path.price);
}

void BM_IncrementCoefficients(benchmark::State& state) {
    const auto obs = make_path(static_cast<std::size_t>(state.range(0)));
    const int band = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(fvol::increment_coefficients(obs, band));
    state.SetItemsProcessed(state.iterations() * state.range(0) * (state.range(1) + 1));
}
BENCHMARK(BM_IncrementCoefficients)->Args({10000, 512})->Args({100000, 1040})->Unit(benchmark::kMillisecond);

void BM_EstimateCoefficients(benchmark::State& state) {
    const auto obs = make_path(10000);
    const int n = static_cast<int>(state.range(0));
    const auto increments = fvol::increment_coefficients(obs, n + 64);
    for (auto _ : state) benchmark::DoNotOptimize(fvol::estimate_coefficients(increments, n, 64));
}
BENCHMARK(BM_EstimateCoefficients)->Arg(512)->Arg(4096);

void BM_SpotPath(benchmark::State& state) {
    const auto obs = make_path(100000);
    const fvol::EstimatorConfig config{4096, 27, false, fvol::linspace_grid(512)};
    for (auto _ : state) benchmark::DoNotOptimize(fvol::estimate_spot_path(obs, config));
}
BENCHMARK(BM_SpotPath)->Unit(benchmark::kMillisecond);

void BM_DoubleSumOracle(benchmark::State& state) {
    const auto obs = make_path(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(fvol::double_sum_oracle(obs, 32, 3));
}
BENCHMARK(BM_DoubleSumOracle)->Arg(128)->Arg(512);

void BM_Dirichlet(benchmark::State& state) {
    const fvol::KernelOrder n(static_cast<int>(state.range(0)));
    double t = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fvol::dirichlet(n, t));
        t += 1e-3;
    }
}
BENCHMARK(BM_Dirichlet)->Arg(64)->Arg(4096);

}  // namespace

BENCHMARK_MAIN();
