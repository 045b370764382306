#include <benchmark/benchmark.h>

#include "mtvlab/constants.hpp"
#include "mtvlab/index.hpp"
#include "mtvlab/quadrature.hpp"
#include "mtvlab/series.hpp"
#include "mtvlab/tvalues.hpp"

using namespace mtvlab;

static void BM_DirectTail(benchmark::State& state) {
    SignedIndex idx = parse_index("2,3");
    for (auto _ : state) benchmark::DoNotOptimize(eval_signed_mtv(idx, 1e-9));
}
BENCHMARK(BM_DirectTail);

static void BM_AcceleratedTail(benchmark::State& state) {
    SignedIndex idx = parse_index("1,~2");
    for (auto _ : state) benchmark::DoNotOptimize(eval_signed_mtv(idx, 1e-9));
}
BENCHMARK(BM_AcceleratedTail);

static void BM_LeastSquaresTail(benchmark::State& state) {
    SignedIndex idx = parse_index("~1,~1");
    for (auto _ : state) benchmark::DoNotOptimize(eval_signed_mtv(idx, 1e-7));
}
BENCHMARK(BM_LeastSquaresTail);

static void BM_BuildTables(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build_tables(4096, 5, 4));
}
BENCHMARK(BM_BuildTables);

static void BM_CompositionSum(benchmark::State& state) {
    // fresh tolerance per iteration defeats the memo cache
    double tol = 1e-9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(W(1, 5, 3, tol));
        tol *= 0.9999999;
        if (tol < 1e-10) tol = 1e-9;
    }
}
BENCHMARK(BM_CompositionSum);

static void BM_TanhSinhLog2(benchmark::State& state) {
    KernelSpec spec{0, 2, KernelWeight::none, 0};
    for (auto _ : state) benchmark::DoNotOptimize(integrate(spec, 1e-11));
}
BENCHMARK(BM_TanhSinhLog2);

static void BM_ChainCoefficients(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(Z_comb(1, 8));
}
BENCHMARK(BM_ChainCoefficients);

static void BM_Acceleration(benchmark::State& state) {
    std::vector<double> partials(256);
    double s = 0.0;
    for (int n = 1; n <= 256; ++n) {
        s += ((n % 2 == 1) ? 1.0 : -1.0) / n;
        partials[n - 1] = s;
    }
    for (auto _ : state) benchmark::DoNotOptimize(accelerate_alternating(partials, 32));
}
BENCHMARK(BM_Acceleration);

BENCHMARK_MAIN();
