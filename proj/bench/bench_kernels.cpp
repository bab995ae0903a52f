// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include "vortsol/babenko.hpp"
#include "vortsol/cli.hpp"
#include "vortsol/diagnostics.hpp"
#include "vortsol/dispersion.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace vortsol;

namespace {

const PhysicalParams kUnit(1.0, 1.0, 1.0);

void BM_DispersionTableSerial(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(dispersion_table_serial(kUnit, -100.0, -1e-3, n));
    st.SetItemsProcessed(st.iterations() * n);
}

void BM_DispersionTableParallel(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(dispersion_table(kUnit, -100.0, -1e-3, n));
    st.SetItemsProcessed(st.iterations() * n);
}

void BM_SweepSerial(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(sweep_serial(0.01, 0.5, n));
    st.SetItemsProcessed(st.iterations() * n);
}

void BM_SweepParallel(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(sweep(0.01, 0.5, n));
    st.SetItemsProcessed(st.iterations() * n);
}

struct AssemblyCase {
    PeriodicGrid grid;
    BabenkoOperator op;
    Spectrum u;

    explicit AssemblyCase(int n)
        : grid(n, 40.0 * 2.0 * M_PI), op(kUnit, 1.5, grid), u() {
        std::mt19937_64 rng(1);
        u = random_smooth_field(grid, rng, 0.05, n / 8, true).spectrum();
    }
};

void BM_AssembleSerial(benchmark::State& st) {
    const AssemblyCase c(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(assemble_frechet_matrix_serial(c.op, c.u, JacobianMode::analytic));
}

void BM_AssembleParallel(benchmark::State& st) {
    const AssemblyCase c(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(assemble_frechet_matrix(c.op, c.u, JacobianMode::analytic));
}

} // namespace

BENCHMARK(BM_DispersionTableSerial)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_DispersionTableParallel)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_SweepSerial)->Arg(100)->Arg(2000);
BENCHMARK(BM_SweepParallel)->Arg(100)->Arg(2000);
BENCHMARK(BM_AssembleSerial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleParallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
