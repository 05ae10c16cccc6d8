#include "powsum/expsum.hpp"

#include <benchmark/benchmark.h>

using namespace powsum;

static void BM_EvalSum(benchmark::State& state)
{
    u64 const p = static_cast<u64>(state.range(0));
    SubgroupCtx const ctx(FieldCtx(p), primitive_root(FieldCtx(p)));
    u64 const N = std::min<u64>(ctx.t(), 100000);
    for (auto _ : state)
        benchmark::DoNotOptimize(eval_sum(ctx, 1, N).value());
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * N));
}
// table lookup below 2^22, on-demand angles above
BENCHMARK(BM_EvalSum)->Arg(1000003)->Arg(1000000007);

static void BM_CountJ(benchmark::State& state)
{
    SubgroupCtx const ctx = element_of_order(FieldCtx(1000003), 1000002);
    u64 const N = static_cast<u64>(state.range(1));
    auto const backend = state.range(0) == 0 ? JBackend::naive : JBackend::hashed;
    for (auto _ : state)
        benchmark::DoNotOptimize(count_J(ctx, N, backend));
}
BENCHMARK(BM_CountJ)->Args({0, 100})->Args({1, 100})->Args({0, 300})->Args({1, 300})->Args({1, 3000});

static void BM_ScanLambdas(benchmark::State& state)
{
    SubgroupCtx const ctx = element_of_order(FieldCtx(2003), 2002);
    auto const lambdas = select_lambdas(ctx, LambdaSelection::exhaustive());
    std::vector<u64> grid{1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, 2002};
    for (auto _ : state)
        benchmark::DoNotOptimize(scan_lambdas(ctx, grid, lambdas, 1));
}
BENCHMARK(BM_ScanLambdas);

static void BM_SigmaMax(benchmark::State& state)
{
    SubgroupCtx const ctx = element_of_order(FieldCtx(499), static_cast<u64>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(sigma_max(ctx, 1).magnitude);
}
BENCHMARK(BM_SigmaMax)->Arg(2)->Arg(83)->Arg(498);
