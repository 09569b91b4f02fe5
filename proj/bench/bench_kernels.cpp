// Serial reference vs OpenMP path for each parallel kernel.
// Argument 0 selects Exec::serial, 1 selects Exec::parallel.

#include <benchmark/benchmark.h>

#include <vector>

#include "subergo/gheat.hpp"
#include "subergo/kernel.hpp"
#include "subergo/scenario.hpp"
#include "subergo/sweep.hpp"

namespace {

using namespace subergo;

Exec exec_of(const benchmark::State& st) { return st.range(0) == 0 ? Exec::serial : Exec::parallel; }

void label(benchmark::State& st) { st.SetLabel(st.range(0) == 0 ? "serial" : "parallel"); }

void BM_StepExplicit(benchmark::State& st) {
    const CircleGrid g(static_cast<std::size_t>(st.range(1)));
    const GHeatParams p;
    const auto u = make_initial("random:5", g);
    const double dt = p.cfl * g.spacing() * g.spacing() / p.sigma_hi2;
    for (auto _ : st) benchmark::DoNotOptimize(step_explicit(u, p, dt, exec_of(st)));
    label(st);
}
BENCHMARK(BM_StepExplicit)->ArgsProduct({{0, 1}, {4096, 65536}});

void BM_Solve(benchmark::State& st) {
    const CircleGrid g(static_cast<std::size_t>(st.range(1)));
    const auto phi = make_initial("cos", g);
    for (auto _ : st) benchmark::DoNotOptimize(solve(phi, 0.05, GHeatParams{}, exec_of(st)));
    label(st);
}
BENCHMARK(BM_Solve)->ArgsProduct({{0, 1}, {512, 1024}})->Unit(benchmark::kMillisecond);

void BM_LinearSemigroup(benchmark::State& st) {
    const CircleGrid g(static_cast<std::size_t>(st.range(1)));
    const auto phi = make_initial("random:5", g);
    for (auto _ : st) benchmark::DoNotOptimize(linear_semigroup(phi, {1.0, 0.5}, exec_of(st)));
    label(st);
}
BENCHMARK(BM_LinearSemigroup)->ArgsProduct({{0, 1}, {512, 2048}})->Unit(benchmark::kMillisecond);

void BM_DpBackward(benchmark::State& st) {
    const CircleGrid g(static_cast<std::size_t>(st.range(1)));
    const DPLattice lat(g, GHeatParams{}, 1.0, 64);
    const auto next = make_initial("cos", g);
    std::vector<double> out(g.size());
    for (auto _ : st) {
        lat.backward(next.values(), out, exec_of(st));
        benchmark::DoNotOptimize(out.data());
    }
    label(st);
}
BENCHMARK(BM_DpBackward)->ArgsProduct({{0, 1}, {512, 2048}})->Unit(benchmark::kMicrosecond);

void BM_DpUpperExpectation(benchmark::State& st) {
    const CircleGrid g(512);
    const auto phi = make_initial("cos", g);
    for (auto _ : st) benchmark::DoNotOptimize(dp_upper_expectation(phi, 1.0, GHeatParams{}, 64, exec_of(st)));
    label(st);
}
BENCHMARK(BM_DpUpperExpectation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ExhaustiveSweep(benchmark::State& st) {
    SweepConfig cfg;
    cfg.n = static_cast<std::size_t>(st.range(1));
    for (auto _ : st) benchmark::DoNotOptimize(exhaustive_sweep(cfg, exec_of(st)));
    label(st);
}
BENCHMARK(BM_ExhaustiveSweep)->ArgsProduct({{0, 1}, {3, 4}})->Unit(benchmark::kMillisecond);

void BM_SllnExperiment(benchmark::State& st) {
    const GHeatParams p;
    const CircleGrid g(256);
    const auto phi = make_initial("cos", g);
    const auto policies = default_policies(p);
    const auto seeds = default_seeds();
    for (auto _ : st) benchmark::DoNotOptimize(slln_experiment(phi, policies, p, 500.0, 0.01, seeds, 0.05, exec_of(st)));
    label(st);
}
BENCHMARK(BM_SllnExperiment)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
