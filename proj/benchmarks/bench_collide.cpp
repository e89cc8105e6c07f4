#include <benchmark/benchmark.h>

#include "bench_support.hpp"

using namespace demforge;

static void BM_CollideBaseline(benchmark::State& state) {
    auto sim = benchsupport::dense_simulation(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) {
        sim.zero_forces();
        sim.kernel_initialize_contact_ids();
        sim.kernel_collide(CollideVariant::baseline, false);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CollideBaseline)->Arg(4096)->Arg(16384);

static void BM_CollideTwoPhase(benchmark::State& state) {
    auto sim = benchsupport::dense_simulation(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) {
        sim.zero_forces();
        sim.kernel_initialize_contact_ids();
        sim.kernel_collide(CollideVariant::two_phase, false);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CollideTwoPhase)->Arg(4096)->Arg(16384);

static void BM_FullStep(benchmark::State& state) {
    auto sim = benchsupport::dense_simulation(static_cast<std::size_t>(state.range(0)), 1);
    sim.set_record_traces(false);
    for (auto _ : state) {
        sim.step();
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FullStep)->Arg(4096)->Arg(16384);
