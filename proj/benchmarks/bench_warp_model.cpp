#include <benchmark/benchmark.h>

#include <random>

#include "demforge/warp_model.hpp"

static void BM_WarpModelReplay(benchmark::State& state) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<demforge::LaneTrace> traces(static_cast<std::size_t>(state.range(0)));
    for (auto& lane : traces) {
        const int events = 20 + static_cast<int>(rng() % 16);
        for (int j = 0; j < events; ++j) lane.push_back({j, u(rng) < 0.2});
    }
    const demforge::WarpCostParams params;
    for (auto _ : state) {
        auto report = demforge::model_report(traces, params);
        benchmark::DoNotOptimize(report.cycles_baseline);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WarpModelReplay)->Arg(4096)->Arg(16384);
