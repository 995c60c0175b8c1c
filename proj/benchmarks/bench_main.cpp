#include <benchmark/benchmark.h>

#include "diffcoh/chaincx.hpp"
#include "diffcoh/plotdiag.hpp"
#include "diffcoh/properties.hpp"
#include "diffcoh/random.hpp"
#include "diffcoh/stacks.hpp"
#include "diffcoh/subspace.hpp"
#include "diffcoh/torus.hpp"

using namespace diffcoh;

static void BM_Rank(benchmark::State& state) {
    rnd::Rng rng(7);
    auto n = std::size_t(state.range(0));
    Matrix m = rnd::random_matrix(rng, n, n, 3, 2);
    for (auto _ : state) benchmark::DoNotOptimize(rank(m));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Rank)->RangeMultiplier(2)->Range(8, 64)->Complexity();

static void BM_Kernel(benchmark::State& state) {
    rnd::Rng rng(8);
    auto n = std::size_t(state.range(0));
    Matrix m = rnd::random_matrix(rng, n / 2, n, 3, 2);
    for (auto _ : state) benchmark::DoNotOptimize(kernel(m).dim());
}
BENCHMARK(BM_Kernel)->RangeMultiplier(2)->Range(8, 64);

static void BM_TotCohomology(benchmark::State& state) {
    rnd::Rng rng(9);
    auto w = std::size_t(state.range(0));
    totalize::DoubleComplex dc = rnd::random_double_complex(rng, w, w, 3);
    for (auto _ : state) benchmark::DoNotOptimize(totalize::tot_cohomology(dc, 0));
}
BENCHMARK(BM_TotCohomology)->DenseRange(1, 4);

static void BM_CechPreset(benchmark::State& state) {
    auto p = plotdiag::Preset(state.range(0));
    plotdiag::PlotDiagram d = plotdiag::good_cover_diagram(p);
    stacks::StackModel rdelta(stacks::StackName::BkRdelta_strict, 0);
    for (auto _ : state) benchmark::DoNotOptimize(plotdiag::stack_cohomology(d, rdelta, 1, 1L));
    state.SetLabel(plotdiag::to_string(p));
}
BENCHMARK(BM_CechPreset)->Arg(int(plotdiag::Preset::circle_3arc))->Arg(int(plotdiag::Preset::torus_9patch))
    ->Unit(benchmark::kMillisecond);

static void BM_VerifySquare(benchmark::State& state) {
    auto k = std::size_t(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(stacks::verify_square("4|5", k, 2, long(k) + 3).passed);
}
BENCHMARK(BM_VerifySquare)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_TorusReport(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(torus::torus_report(std::size_t(state.range(0))).entries.size());
}
BENCHMARK(BM_TorusReport)->DenseRange(2, 4);

static void BM_BarOracle(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(torus::bar_cohomology(3, 2, std::size_t(state.range(0))));
}
BENCHMARK(BM_BarOracle)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_Selftest(benchmark::State& state) {
    props::SuiteOptions o;
    o.scale = 0.25;
    for (auto _ : state) benchmark::DoNotOptimize(props::run_suite(o).size());
}
BENCHMARK(BM_Selftest)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
