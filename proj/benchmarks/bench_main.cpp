#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "atomq/bell.hpp"
#include "atomq/expm.hpp"
#include "atomq/gates.hpp"
#include "atomq/trajectories.hpp"

using namespace atomq;

static void BM_MatrixExponential(benchmark::State& state) {
    const auto n = static_cast<Eigen::Index>(state.range(0));
    std::mt19937_64 rng(1);
    std::normal_distribution<double> normal;
    Matrix a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(normal(rng), normal(rng));
    for (auto _ : state) benchmark::DoNotOptimize(matrix_exponential(a));
}
BENCHMARK(BM_MatrixExponential)->Arg(12)->Arg(27)->Arg(64);

static void BM_PreparePair(benchmark::State& state) {
    const SystemSpec spec = pair_spec(1.0, 1.0, 0.001, 0.02);
    for (auto _ : state) benchmark::DoNotOptimize(prepare_pair(spec, 0.02, std::numbers::pi / 0.02));
}
BENCHMARK(BM_PreparePair);

static void BM_CnotPulse(benchmark::State& state) {
    const SystemSpec spec = lambda_spec(1.0, 1.0, 0.001, 0.02);
    const StateVector in = basis_state(qubit_layout(2), {1, 0});
    for (auto _ : state) benchmark::DoNotOptimize(cnot_pulse(spec, 0.02, in));
}
BENCHMARK(BM_CnotPulse);

static void BM_BellLandscape(benchmark::State& state) {
    std::vector<double> wt(101), th(101);
    for (int k = 0; k < 101; ++k) {
        wt[k] = 2.0 * std::numbers::pi * k / 100.0;
        th[k] = std::numbers::pi * k / 100.0;
    }
    for (auto _ : state) benchmark::DoNotOptimize(bs_landscape(wt, th));
}
BENCHMARK(BM_BellLandscape);

static void BM_TrajectoryBatch(benchmark::State& state) {
    const SystemSpec spec = pair_spec(1.0, 1.0, 0.01, 0.2);
    const StateVector psi = basis_state(spec.layout(), {0, 0, 0});
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_trajectories(spec, psi, std::numbers::pi / 0.2, 1000, 7));
    }
}
BENCHMARK(BM_TrajectoryBatch)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
