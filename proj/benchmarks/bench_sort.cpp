#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "demforge/bitonic_sort.hpp"

static void BM_BitonicSort(benchmark::State& state) {
    std::mt19937_64 rng(7);
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<std::uint32_t> base_keys(n);
    for (auto& k : base_keys) k = static_cast<std::uint32_t>(rng() % (n / 4 + 1));
    std::vector<std::uint32_t> values(n);
    for (auto _ : state) {
        std::vector<std::uint32_t> keys = base_keys;
        for (std::size_t i = 0; i < n; ++i) values[i] = static_cast<std::uint32_t>(i);
        demforge::bitonic_sort(keys, values);
        benchmark::DoNotOptimize(keys.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BitonicSort)->Arg(1 << 12)->Arg(1 << 14)->Arg(1 << 17);
