#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "demforge/pipeline.hpp"
#include "demforge/sim_config.hpp"

namespace demforge {

struct RunSummary {
    std::int64_t steps_run = 0;
    int snapshots_written = 0;
    std::filesystem::path metrics_path;
};

/// The `run` entry point: builds the initial state, runs warm-up then the
/// measured steps, and writes snapshot CSVs plus the per-step metrics CSV
/// into out_dir. Outputs are byte-deterministic for a fixed config + seed
/// (wall times are zeroed in the metrics file for that reason).
RunSummary run_simulation(const SimConfig& cfg, const std::filesystem::path& out_dir);

/// Measurements of one bench phase (sparse = pre-warm-up, dense = after).
struct BenchPhase {
    std::string label;
    std::int64_t steps = 0;
    /// Mean wall ns per kernel; the Collide slot holds the baseline variant.
    std::array<double, kKernelCount> kernel_mean_ns{};
    double collide_ns_baseline = 0.0;
    double collide_ns_two_phase = 0.0;
    WarpReport model;
    double mean_coordination = 0.0;
    std::int64_t contacts = 0;

    double wall_ratio() const {
        return collide_ns_two_phase > 0.0 ? collide_ns_baseline / collide_ns_two_phase : 1.0;
    }
};

struct BenchReport {
    BenchPhase sparse;
    BenchPhase dense;
    std::string format() const;
};

/// The `bench` entry point: measures both Collide variants on identical
/// per-step states (aborting if their outputs ever differ bitwise), before
/// and after warm-up. run.steps controls the number of measured dense
/// steps; run.warmup_steps the warm-up length.
BenchReport bench(const SimConfig& cfg);

struct PropertyResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    std::vector<PropertyResult> properties;
    bool all_pass() const;
    std::string format() const;
};

/// The `verify` entry point: runs the O(N^2) oracle equivalence and
/// completeness checks plus the momentum / dissipation / friction-bound
/// property suite against the configured state (with seeded velocities so
/// the properties are exercised, not vacuous).
VerifyReport verify(const SimConfig& cfg);

}  // namespace demforge
