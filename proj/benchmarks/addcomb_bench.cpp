#include "powsum/addcomb.hpp"
#include "powsum/random.hpp"
#include "powsum/residue_set.hpp"

#include <benchmark/benchmark.h>

using namespace powsum;

namespace {

ResidueSet random_set(u64 p, u64 size, u64 seed)
{
    Rng rng(seed);
    return ResidueSet::from_values(p, rng.sample_distinct(p, size));
}

} // namespace

static void BM_Energy(benchmark::State& state)
{
    u64 const p = 65537;
    u64 const size = static_cast<u64>(state.range(1));
    auto const A = random_set(p, size, 1);
    auto const B = random_set(p, size, 2);
    auto const backend = static_cast<EnergyBackend>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(additive_energy(A, B, backend));
}
// naive / hashed / transform across set sizes: the crossover is what matters
BENCHMARK(BM_Energy)
    ->ArgsProduct({{0, 1, 2}, {64, 512, 4096}})
    ->ArgNames({"backend", "size"});

static void BM_Sumset(benchmark::State& state)
{
    u64 const p = 1000003;
    auto const A = random_set(p, static_cast<u64>(state.range(0)), 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(sumset(A, A).size());
}
BENCHMARK(BM_Sumset)->Arg(100)->Arg(1000);
