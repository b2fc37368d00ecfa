#include <benchmark/benchmark.h>

#include <random>

#include "splitlab/kernels.hpp"

using namespace splitlab;

namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> e(rows * cols);
    for (double& x : e) x = u(rng);
    return Matrix(rows, cols, std::move(e));
}

template <Matrix (*Kernel)(const Matrix&, const Matrix&)>
void bm_product(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix a = random_matrix(n, n, 1), b = random_matrix(n, n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(a, b));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n * n));
}

template <Vector (*Kernel)(const Matrix&, const Vector&)>
void bm_gemv(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Matrix a = random_matrix(n, n, 3);
    const Vector x(n, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(a, x));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}

}  // namespace

BENCHMARK(bm_product<kernels::serial::gemm>)->Name("gemm/serial")->RangeMultiplier(2)->Range(32, 512);
BENCHMARK(bm_product<kernels::gemm>)->Name("gemm/openmp")->RangeMultiplier(2)->Range(32, 512)->UseRealTime();
BENCHMARK(bm_product<kernels::serial::gemm_tn>)->Name("gemm_tn/serial")->RangeMultiplier(2)->Range(32, 512);
BENCHMARK(bm_product<kernels::gemm_tn>)->Name("gemm_tn/openmp")->RangeMultiplier(2)->Range(32, 512)->UseRealTime();
BENCHMARK(bm_gemv<kernels::serial::gemv>)->Name("gemv/serial")->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK(bm_gemv<kernels::gemv>)->Name("gemv/openmp")->RangeMultiplier(4)->Range(64, 4096)->UseRealTime();
BENCHMARK_MAIN();
