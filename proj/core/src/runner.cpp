#include "demforge/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "demforge/compare.hpp"
#include "demforge/error.hpp"
#include "demforge/lattice.hpp"
#include "demforge/oracle.hpp"
#include "demforge/rng.hpp"
#include "demforge/snapshot_io.hpp"

namespace demforge {

namespace {

std::filesystem::path snapshot_path(const std::filesystem::path& out_dir, std::int64_t step) {
    char name[32];
    std::snprintf(name, sizeof(name), "snapshot_%06" PRId64 ".csv", step);
    return out_dir / name;
}

KernelError at_step(const KernelError& e, std::int64_t step) {
    return KernelError(e.kernel(), "aborted at step " + std::to_string(step) + ": " + e.what());
}

}  // namespace

RunSummary run_simulation(const SimConfig& cfg, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);

    ParticleSet state = build_initial_state(cfg);
    Simulation sim(std::move(state), cfg);

    RunSummary summary;
    write_snapshot(snapshot_path(out_dir, 0), sim.particles());
    ++summary.snapshots_written;

    sim.set_record_traces(false);
    for (std::int64_t s = 1; s <= cfg.run.warmup_steps; ++s) {
        try {
            sim.step();
        } catch (const KernelError& e) {
            throw at_step(e, -s);  // negative marks a warm-up step
        }
    }

    summary.metrics_path = out_dir / "metrics.csv";
    std::string metrics_text = std::string(kMetricsHeader) + "\n";

    sim.set_record_traces(true);
    std::int64_t last_snapshot = 0;
    for (std::int64_t s = 1; s <= cfg.run.steps; ++s) {
        StepMetrics m;
        try {
            m = sim.step();
        } catch (const KernelError& e) {
            throw at_step(e, s);
        }
        m.step = s;
        append_metrics_rows(metrics_text, m, /*zero_wall_time=*/true);
        const bool cadence = cfg.run.snapshot_every > 0 && s % cfg.run.snapshot_every == 0;
        if (cadence || s == cfg.run.steps) {
            write_snapshot(snapshot_path(out_dir, s), sim.particles());
            ++summary.snapshots_written;
            last_snapshot = s;
        }
        ++summary.steps_run;
    }
    (void)last_snapshot;

    std::ofstream f(summary.metrics_path, std::ios::binary);
    if (!f) throw ConfigError("cannot open " + summary.metrics_path.string());
    f << metrics_text;
    return summary;
}

namespace {

using clock_type = std::chrono::steady_clock;

std::int64_t time_ns(const std::function<void()>& fn) {
    const auto t0 = clock_type::now();
    fn();
    return std::chrono::duration_cast<std::chrono::nanoseconds>(clock_type::now() - t0).count();
}

/// Runs `measure_steps` steps, measuring both Collide variants on the same
/// pre-collide state each step and checking their outputs are bitwise
/// identical. The simulation advances with the two-phase result.
BenchPhase measure_phase(Simulation& sim, const SimConfig& cfg, std::int64_t measure_steps,
                         std::string label) {
    BenchPhase phase;
    phase.label = std::move(label);
    phase.steps = measure_steps;
    std::array<double, kKernelCount> total_ns{};
    double coordination = 0.0;

    for (std::int64_t s = 0; s < measure_steps; ++s) {
        total_ns[static_cast<int>(Kernel::integrate)] +=
            static_cast<double>(time_ns([&] { sim.kernel_integrate(); }));
        total_ns[static_cast<int>(Kernel::calc_hash)] +=
            static_cast<double>(time_ns([&] { sim.kernel_calc_hash(); }));
        total_ns[static_cast<int>(Kernel::bitonic_sort)] +=
            static_cast<double>(time_ns([&] { sim.kernel_bitonic_sort(); }));
        total_ns[static_cast<int>(Kernel::find_cell_bounds_and_reorder)] +=
            static_cast<double>(time_ns([&] { sim.kernel_find_cell_bounds_and_reorder(); }));
        sim.zero_forces();
        total_ns[static_cast<int>(Kernel::force_gravity)] +=
            static_cast<double>(time_ns([&] { sim.kernel_force_gravity(); }));
        total_ns[static_cast<int>(Kernel::initialize_contact_ids)] +=
            static_cast<double>(time_ns([&] { sim.kernel_initialize_contact_ids(); }));

        // Both variants from the identical pre-collide state.
        const ForceAccumulator forces_before = sim.forces();
        const ContactTable table_before = sim.contact_table();

        phase.collide_ns_baseline += static_cast<double>(
            time_ns([&] { sim.kernel_collide(CollideVariant::baseline, true); }));
        const ForceAccumulator forces_baseline = sim.forces();
        const ContactTable table_baseline = sim.contact_table();
        const WarpReport step_report = model_report(sim.traces(), cfg.warp);
        phase.model.merge(step_report);

        sim.forces() = forces_before;
        sim.contact_table() = table_before;
        phase.collide_ns_two_phase += static_cast<double>(
            time_ns([&] { sim.kernel_collide(CollideVariant::two_phase, true); }));

        if (!bitwise_equal(sim.forces(), forces_baseline) ||
            !bitwise_equal(sim.contact_table(), table_baseline)) {
            throw KernelError("Collide", "bench: variant outputs differ bitwise");
        }

        coordination += sim.mean_coordination();

        total_ns[static_cast<int>(Kernel::collide_rectangle)] +=
            static_cast<double>(time_ns([&] { sim.kernel_collide_rectangle(); }));
        total_ns[static_cast<int>(Kernel::collide_line)] +=
            static_cast<double>(time_ns([&] { sim.kernel_collide_line(); }));
    }

    const double inv = 1.0 / static_cast<double>(std::max<std::int64_t>(1, measure_steps));
    for (int k = 0; k < kKernelCount; ++k) phase.kernel_mean_ns[k] = total_ns[k] * inv;
    phase.kernel_mean_ns[static_cast<int>(Kernel::collide)] = phase.collide_ns_baseline * inv;
    phase.collide_ns_baseline *= inv;
    phase.collide_ns_two_phase *= inv;
    phase.mean_coordination = coordination * inv;
    return phase;
}

void format_phase(std::ostringstream& os, const BenchPhase& phase) {
    os << "[" << phase.label << "] measured steps: " << phase.steps
       << ", mean coordination: " << phase.mean_coordination << "\n";
    os << "  kernel wall time (mean ns/step):\n";
    for (int k = 0; k < kKernelCount; ++k) {
        const auto kernel = static_cast<Kernel>(k);
        if (kernel == Kernel::collide) {
            os << "    Collide(baseline):           " << phase.collide_ns_baseline << "\n";
            os << "    Collide(two_phase):          " << phase.collide_ns_two_phase << "\n";
        } else {
            os << "    " << kernel_name(kernel) << ":";
            for (std::size_t pad = std::string(kernel_name(kernel)).size(); pad < 28; ++pad) {
                os << ' ';
            }
            os << phase.kernel_mean_ns[k] << "\n";
        }
    }
    os << "  Collide wall ratio baseline/two_phase:  " << phase.wall_ratio() << "\n";
    os << "  modeled warp cycles baseline:          " << phase.model.cycles_baseline << "\n";
    os << "  modeled warp cycles two_phase:         " << phase.model.cycles_two_phase << "\n";
    os << "  modeled ratio baseline/two_phase:      " << phase.model.speedup() << "\n";
    os << "  modeled utilization baseline:          " << phase.model.utilization_baseline << "\n";
    os << "  modeled utilization two_phase:         " << phase.model.utilization_two_phase << "\n";
}

}  // namespace

std::string BenchReport::format() const {
    std::ostringstream os;
    format_phase(os, sparse);
    os << "\n";
    format_phase(os, dense);
    return os.str();
}

BenchReport bench(const SimConfig& cfg) {
    ParticleSet state = build_initial_state(cfg);
    Simulation sim(std::move(state), cfg);
    sim.set_record_traces(false);

    BenchReport report;
    const std::int64_t measure_steps = std::max<std::int64_t>(1, cfg.run.steps);
    const std::int64_t sparse_steps = std::min<std::int64_t>(5, measure_steps);

    report.sparse = measure_phase(sim, cfg, sparse_steps, "sparse (pre-warm-up)");

    for (std::int64_t s = 0; s < cfg.run.warmup_steps; ++s) {
        try {
            sim.step();
        } catch (const KernelError& e) {
            throw at_step(e, s + 1);
        }
    }

    report.dense = measure_phase(sim, cfg, measure_steps, "dense (warm-started)");
    return report;
}

bool VerifyReport::all_pass() const {
    return std::all_of(properties.begin(), properties.end(),
                       [](const PropertyResult& p) { return p.pass; });
}

std::string VerifyReport::format() const {
    std::ostringstream os;
    for (const auto& p : properties) {
        os << (p.pass ? "PASS" : "FAIL") << "  " << p.name << ": " << p.detail << "\n";
    }
    return os.str();
}

namespace {

/// Seeded velocities so the property scenarios actually produce contacts
/// (the lattice starts at rest, which would make every check vacuous).
ParticleSet seeded_state(const SimConfig& cfg) {
    ParticleSet state = build_initial_state(cfg);
    XorShift64Star rng(cfg.seed ^ 0x7E57AB1E5EEDULL);
    for (std::size_t i = 0; i < state.size(); ++i) {
        state.velocities[i] = Vec3{0.1 + rng.next_in(-0.5, 0.5), rng.next_in(-0.5, 0.5),
                                   rng.next_in(-0.5, 0.5)};
        state.angular_velocities[i] =
            Vec3{rng.next_in(-10.0, 10.0), rng.next_in(-10.0, 10.0), rng.next_in(-10.0, 10.0)};
    }
    return state;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_from_traces(
    const std::vector<LaneTrace>& traces) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t i = 0; i < traces.size(); ++i) {
        for (const TraceEvent& e : traces[i]) {
            if (!e.contact) continue;
            const auto j = static_cast<std::uint32_t>(e.candidate);
            pairs.emplace(std::min(i, j), std::max(i, j));
        }
    }
    return {pairs.begin(), pairs.end()};
}

/// Advances a fork of `sim` to its next pre-collide point (everything up to
/// and including the sweep, with gravity skipped so the accumulators hold
/// pure Collide contributions afterwards).
Simulation fork_at_collide(const Simulation& sim) {
    Simulation copy = sim;
    copy.kernel_integrate();
    copy.kernel_calc_hash();
    copy.kernel_bitonic_sort();
    copy.kernel_find_cell_bounds_and_reorder();
    copy.zero_forces();
    copy.kernel_initialize_contact_ids();
    return copy;
}

}  // namespace

VerifyReport verify(const SimConfig& cfg) {
    VerifyReport report;

    // --- Interaction run: config as-is (gravity + walls), seeded motion. ---
    {
        Simulation sim(seeded_state(cfg), cfg);
        sim.set_record_traces(false);

        const std::int64_t steps = 500;
        const std::int64_t checkpoint_every = 100;
        bool completeness_ok = true;
        bool oracle_ok = true;
        std::string completeness_detail;
        std::string oracle_detail;
        std::int64_t missing_total = 0;
        std::int64_t pair_total = 0;
        double friction_max = 0.0;
        std::int64_t contact_events = 0;
        int checkpoints = 0;

        for (std::int64_t s = 0; s <= steps; ++s) {
            if (s % checkpoint_every == 0) {
                ++checkpoints;
                Simulation fork = fork_at_collide(sim);
                const ContactTable table_before = fork.contact_table();
                fork.kernel_collide(CollideVariant::baseline, true);

                const auto found = pairs_from_traces(fork.traces());
                const auto expected = brute_force_contact_pairs(fork.particles());
                pair_total += static_cast<std::int64_t>(expected.size());
                if (found != expected) {
                    completeness_ok = false;
                    std::int64_t missing = 0;
                    for (const auto& p : expected) {
                        if (!std::binary_search(found.begin(), found.end(), p)) ++missing;
                    }
                    missing_total += missing;
                }

                const OracleResult oracle = oracle_collide(
                    fork.particles(), cfg.materials, fork.grid(), cfg.dt, table_before);
                if (!bitwise_equal(fork.forces(), oracle.forces) ||
                    !bitwise_equal(fork.contact_table(), oracle.table)) {
                    oracle_ok = false;
                }
            }
            if (s < steps) {
                StepMetrics m;
                try {
                    m = sim.step();
                } catch (const KernelError& e) {
                    throw at_step(e, s + 1);
                }
                friction_max = std::max(friction_max, m.friction_max_ratio);
                contact_events += m.contacts;
            }
        }

        if (completeness_ok) {
            completeness_detail = "27-neighborhood found all " + std::to_string(pair_total) +
                                  " brute-force pairs over " + std::to_string(checkpoints) +
                                  " checkpoints";
        } else {
            completeness_detail =
                std::to_string(missing_total) + " contacting pairs missed";
            if (!sim.neighborhood_sufficient()) {
                completeness_detail += " (cell size " + format_double(sim.grid().cell_size) +
                                       " < 2*r_max = " +
                                       format_double(2.0 * sim.particles().max_radius()) +
                                       "; the 27-cell neighborhood cannot see every contact)";
            }
        }
        report.properties.push_back(
            {"contact-completeness", completeness_ok, completeness_detail});
        report.properties.push_back(
            {"force-oracle-equivalence", oracle_ok,
             oracle_ok ? "Collide forces and delta_t table bitwise-match the O(N^2) oracle at " +
                             std::to_string(checkpoints) + " checkpoints"
                       : oracle_detail.empty() ? "mismatch against the O(N^2) oracle"
                                               : oracle_detail});

        const bool friction_ok = friction_max <= 1.0 + 1e-9;
        report.properties.push_back(
            {"friction-bound", friction_ok,
             "max |F_t| / (mu |F_n|) = " + format_double(friction_max) + " over " +
                 std::to_string(contact_events) + " contact events"});
    }

    // --- Conservation run: same state, gravity off, walls removed. ---
    {
        SimConfig free_cfg = cfg;
        free_cfg.gravity = Vec3{};
        free_cfg.rect_walls.clear();
        free_cfg.line_walls.clear();

        Simulation sim(seeded_state(free_cfg), free_cfg);
        sim.set_record_traces(false);

        const Vec3 p0 = total_momentum(sim.particles());
        const double p0_norm = norm(p0);
        double ke_last = total_kinetic_energy(sim.particles());
        bool ke_free_last = true;
        double worst_ke_ratio = 0.0;
        std::int64_t collisions_seen = 0;

        const std::int64_t steps = 1000;
        for (std::int64_t s = 1; s <= steps; ++s) {
            StepMetrics m;
            try {
                m = sim.step();
            } catch (const KernelError& e) {
                throw at_step(e, s);
            }
            collisions_seen += m.contacts;
            if (s % 10 == 0) {
                const bool contact_free = m.contacts == 0;
                if (contact_free) {
                    const double ke = total_kinetic_energy(sim.particles());
                    if (ke_free_last) {
                        worst_ke_ratio = std::max(worst_ke_ratio, ke / ke_last);
                    }
                    ke_last = ke;
                }
                ke_free_last = contact_free;
            }
        }

        const double drift = norm(total_momentum(sim.particles()) - p0);
        const double rel_drift = p0_norm > 0.0 ? drift / p0_norm : drift;
        report.properties.push_back(
            {"momentum-conservation", rel_drift <= 1e-9,
             "relative drift " + format_double(rel_drift) + " over " + std::to_string(steps) +
                 " steps (g = 0, no walls)"});

        const bool dissipative = worst_ke_ratio <= 1.0 + 1e-9;
        report.properties.push_back(
            {"energy-dissipation", dissipative,
             "worst contact-free kinetic energy ratio " +
                 (worst_ke_ratio > 0.0 ? format_double(worst_ke_ratio) : std::string("n/a")) +
                 ", " + std::to_string(collisions_seen) + " contact events seen"});
    }

    return report;
}

}  // namespace demforge
