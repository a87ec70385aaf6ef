#include <benchmark/benchmark.h>

#include "entbounds/figures.hpp"
#include "entbounds/optimizer.hpp"
#include "entbounds/verify.hpp"

namespace {

entb::Execution mode(const benchmark::State& state)
{
    return state.range(0) ? entb::Execution::Parallel : entb::Execution::Serial;
}

void BM_Verification(benchmark::State& state)
{
    entb::VerifyConfig cfg;
    cfg.qubits = 4;
    cfg.trials = 100;
    cfg.lemma_samples = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(entb::run_verification(cfg, mode(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(cfg.trials));
}

void BM_LemmaGrid(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(entb::lemma_grid_check(100000, 42, 1e-12, mode(state)));
}

void BM_Figure(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(entb::compute_figure({2, 2001}, mode(state)));
}

void BM_ExhaustiveOptimizer(benchmark::State& state)
{
    const entb::BoundContext ctx(entb::haar_random_pure(6, 42));
    for (auto _ : state)
        benchmark::DoNotOptimize(entb::optimize(ctx, "A", 1.0, entb::Strategy::Exhaustive, mode(state)));
}

}  // namespace

BENCHMARK(BM_Verification)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LemmaGrid)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Figure)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExhaustiveOptimizer)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
