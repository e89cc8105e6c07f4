#include "demforge/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <numeric>

#include "demforge/contact_mechanics.hpp"
#include "demforge/error.hpp"
#include "demforge/parallel.hpp"

namespace demforge {

const char* kernel_name(Kernel k) {
    switch (k) {
        case Kernel::integrate: return "Integrate";
        case Kernel::calc_hash: return "CalcHash";
        case Kernel::bitonic_sort: return "BitonicSort";
        case Kernel::find_cell_bounds_and_reorder: return "FindCellBoundsAndReorder";
        case Kernel::force_gravity: return "ForceGravity";
        case Kernel::initialize_contact_ids: return "InitializeContactIDs";
        case Kernel::collide: return "Collide";
        case Kernel::collide_rectangle: return "CollideRectangle";
        case Kernel::collide_line: return "CollideLine";
    }
    return "?";
}

void integrate(ParticleSet& state, const ForceAccumulator& forces, double dt) {
    for (std::size_t i = 0; i < state.size(); ++i) {
        const Vec3& f = forces.force[i];
        const Vec3& t = forces.torque[i];
        if (!is_finite(f) || !is_finite(t)) {
            throw KernelError("Integrate",
                              "non-finite force on particle " + std::to_string(state.ids[i]));
        }
        state.velocities[i] += f * (dt / state.masses[i]);
        state.positions[i] += state.velocities[i] * dt;
        const double inertia = 0.4 * state.masses[i] * state.radii[i] * state.radii[i];
        state.angular_velocities[i] += t * (dt / inertia);
    }
}

void force_gravity(const ParticleSet& state, ForceAccumulator& forces, const Vec3& gravity) {
    for (std::size_t i = 0; i < state.size(); ++i) {
        forces.force[i] += gravity * state.masses[i];
    }
}

Simulation::Simulation(ParticleSet initial, SimConfig config)
    : cfg_(std::move(config)), state_(std::move(initial)) {
    cfg_.validate();
    state_.validate();
    const std::size_t n = state_.size();

    const double r_max = state_.max_radius();
    grid_ = make_grid(cfg_.domain_min, cfg_.domain_max, r_max, cfg_.grid_cell_size);
    neighborhood_sufficient_ = grid_.cell_size >= 2.0 * r_max;

    forces_.resize(n);
    table_ = ContactTable(static_cast<std::uint32_t>(n), cfg_.contact_capacity);
    traces_.resize(n);
    candidate_count_.resize(n);
    pp_contact_count_.resize(n);
    wall_contact_count_.resize(n);
    friction_ratio_.resize(n);

    const std::size_t m = cfg_.materials.size();
    pair_alpha_.resize(m * m);
    pair_mu_.resize(m * m);
    for (std::uint32_t a = 0; a < m; ++a) {
        for (std::uint32_t b = 0; b < m; ++b) {
            pair_alpha_[a * m + b] = restitution_alpha(cfg_.materials.pair_restitution(a, b));
            pair_mu_[a * m + b] = cfg_.materials.pair_sliding_friction(a, b);
        }
    }

    // Force-only pass over the initial configuration, so the first step's
    // Integrate uses the previous (initial) forces as the kernel order
    // requires.
    run_force_phase(nullptr, false);
}

template <typename F>
void Simulation::parallel_particles(F&& body) {
    std::mutex error_mutex;
    std::exception_ptr error;
    std::size_t error_at = SIZE_MAX;
    parallel_for(state_.size(), [&](std::size_t begin, std::size_t end) {
        try {
            for (std::size_t i = begin; i < end; ++i) body(i);
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (begin < error_at) {
                error_at = begin;
                error = std::current_exception();
            }
        }
    });
    if (error) std::rethrow_exception(error);
}

void Simulation::kernel_integrate() { integrate(state_, forces_, cfg_.dt); }

void Simulation::kernel_calc_hash() {
    const std::size_t n = state_.size();
    hash_keys_.resize(n);
    std::atomic<std::int64_t> clamps{0};
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
        std::int64_t local = 0;
        for (std::size_t i = begin; i < end; ++i) {
            bool clamped = false;
            hash_keys_[i] = calc_hash(state_.positions[i], grid_, &clamped);
            if (clamped) ++local;
        }
        clamps.fetch_add(local, std::memory_order_relaxed);
    });
    clamp_count_ = clamps.load();
}

void Simulation::kernel_bitonic_sort() {
    const std::size_t n = state_.size();
    order_.permutation.resize(n);
    std::iota(order_.permutation.begin(), order_.permutation.end(), 0u);
    order_.sort_stats = bitonic_sort(hash_keys_, order_.permutation);
    order_.sorted_keys = std::move(hash_keys_);
}

void Simulation::kernel_find_cell_bounds_and_reorder() {
    find_cell_bounds(order_, grid_.cell_count());
    state_.apply_order(order_.permutation);
    table_.remap_ids(order_.permutation);
}

void Simulation::zero_forces() { forces_.zero(); }

void Simulation::kernel_force_gravity() { force_gravity(state_, forces_, cfg_.gravity); }

void Simulation::kernel_initialize_contact_ids() { table_.initialize_contact_ids(); }

std::optional<ContactGeometry> Simulation::check_pair(std::size_t i, std::uint32_t j) const {
    const Vec3 diff = state_.positions[j] - state_.positions[i];
    const double reach = state_.radii[i] + state_.radii[j];
    const double reach2 = reach * reach;
    // Cheap screen with slack so the authoritative sqrt-based test below
    // never disagrees with it at the boundary.
    if (norm_squared(diff) >= reach2 + reach2 * 1e-9) return std::nullopt;
    return contact_geometry(state_.positions[i], state_.radii[i], state_.positions[j],
                            state_.radii[j], state_.velocities[i], state_.velocities[j],
                            state_.angular_velocities[i], state_.angular_velocities[j]);
}

void Simulation::apply_pair_contact(std::size_t i, std::uint32_t j, const ContactGeometry& geom) {
    const std::uint32_t mi = state_.material_ids[i];
    const std::uint32_t mj = state_.material_ids[j];
    const std::size_t m = cfg_.materials.size();
    const double mu = pair_mu_[mi * m + mj];

    const ContactCoefficients coeffs = contact_coefficients_with_alpha(
        geom.overlap, cfg_.materials.params(mi), cfg_.materials.params(mj), state_.radii[i],
        state_.radii[j], state_.masses[i], state_.masses[j], pair_alpha_[mi * m + mj], false);

    ContactSlot& slot = table_.lookup_or_insert(static_cast<std::uint32_t>(i),
                                                static_cast<std::int32_t>(j), "Collide");
    const Vec3 delta_t =
        update_tangential_displacement(slot.delta_t, geom.normal, geom.tangential_velocity, cfg_.dt);
    const ContactForce result = contact_force(geom, coeffs, delta_t, mu, state_.radii[i]);
    slot.delta_t = result.new_tangential_displacement;

    forces_.force[i] += result.force;
    forces_.torque[i] += result.torque;
    ++pp_contact_count_[i];

    const double limit = mu * result.normal_magnitude;
    if (limit > 0.0) {
        friction_ratio_[i] = std::max(friction_ratio_[i], result.tangential_magnitude / limit);
    }
}

void Simulation::kernel_collide(CollideVariant variant, bool record_traces) {
    const std::size_t n = state_.size();
    std::fill(candidate_count_.begin(), candidate_count_.end(), 0u);
    std::fill(pp_contact_count_.begin(), pp_contact_count_.end(), 0u);
    std::fill(wall_contact_count_.begin(), wall_contact_count_.end(), 0u);
    std::fill(friction_ratio_.begin(), friction_ratio_.end(), 0.0);

    const std::size_t capacity = static_cast<std::size_t>(cfg_.contact_capacity);

    parallel_particles([&, variant, record_traces](std::size_t i) {
        if (record_traces) traces_[i].clear();

        std::array<std::uint32_t, 27> cells;
        const int cell_count = neighbor_cells(order_.sorted_keys[i], grid_, cells);

        auto traverse = [&](auto&& on_candidate) {
            for (int c = 0; c < cell_count; ++c) {
                const std::uint32_t nc = cells[c];
                const std::uint32_t begin = order_.cell_start[nc];
                const std::uint32_t end = order_.cell_end[nc];
                for (std::uint32_t j = begin; j < end; ++j) {
                    if (j == i) continue;
                    on_candidate(j);
                }
            }
        };

        if (variant == CollideVariant::baseline) {
            traverse([&](std::uint32_t j) {
                ++candidate_count_[i];
                const auto geom = check_pair(i, j);
                if (record_traces) {
                    traces_[i].push_back({static_cast<std::int32_t>(j), geom.has_value()});
                }
                if (geom) apply_pair_contact(i, j, *geom);
            });
        } else {
            // Loop 1: record contact partner IDs only, bounded by the
            // contact capacity.
            thread_local std::vector<std::uint32_t> local;
            local.clear();
            traverse([&](std::uint32_t j) {
                ++candidate_count_[i];
                const bool hit = check_pair(i, j).has_value();
                if (record_traces) traces_[i].push_back({static_cast<std::int32_t>(j), hit});
                if (hit) {
                    if (local.size() >= capacity) {
                        throw CapacityError("Collide", static_cast<std::uint32_t>(i),
                                            cfg_.contact_capacity);
                    }
                    local.push_back(j);
                }
            });
            // Loop 2: force computations over the recorded IDs.
            for (const std::uint32_t j : local) {
                const auto geom = check_pair(i, j);
                apply_pair_contact(i, j, *geom);
            }
        }
    });
}

void Simulation::apply_wall_contact(std::size_t i, std::int32_t wall_partner,
                                    const ContactGeometry& geom, std::uint32_t wall_material,
                                    const std::string& kernel) {
    const std::uint32_t mi = state_.material_ids[i];
    const std::size_t m = cfg_.materials.size();
    const double mu = pair_mu_[mi * m + wall_material];

    const ContactCoefficients coeffs = contact_coefficients_with_alpha(
        geom.overlap, cfg_.materials.params(mi), cfg_.materials.params(wall_material),
        state_.radii[i], 0.0, state_.masses[i], 0.0, pair_alpha_[mi * m + wall_material], true);

    ContactSlot& slot =
        table_.lookup_or_insert(static_cast<std::uint32_t>(i), wall_partner, kernel);
    const Vec3 delta_t =
        update_tangential_displacement(slot.delta_t, geom.normal, geom.tangential_velocity, cfg_.dt);
    const ContactForce result = contact_force(geom, coeffs, delta_t, mu, state_.radii[i]);
    slot.delta_t = result.new_tangential_displacement;

    forces_.force[i] += result.force;
    forces_.torque[i] += result.torque;
    ++wall_contact_count_[i];

    const double limit = mu * result.normal_magnitude;
    if (limit > 0.0) {
        friction_ratio_[i] = std::max(friction_ratio_[i], result.tangential_magnitude / limit);
    }
}

void Simulation::kernel_collide_rectangle() {
    if (cfg_.rect_walls.empty()) return;
    parallel_particles([&](std::size_t i) {
        for (std::size_t w = 0; w < cfg_.rect_walls.size(); ++w) {
            const RectWall& rect = cfg_.rect_walls[w];
            const ClosestPoint cp = closest_point_rectangle(state_.positions[i], rect);
            if (cp.distance >= state_.radii[i]) continue;
            const auto partner =
                ContactPartner::make_wall(PartnerKind::rectangle_wall, rect.material_id);
            const auto geom =
                contact_geometry(state_.positions[i], state_.radii[i], state_.velocities[i],
                                 state_.angular_velocities[i], cp.point, partner);
            if (!geom) continue;
            apply_wall_contact(i, ContactTable::wall_id(static_cast<int>(w)), *geom,
                               rect.material_id, "CollideRectangle");
        }
    });
}

void Simulation::kernel_collide_line() {
    if (cfg_.line_walls.empty()) return;
    const int rect_count = static_cast<int>(cfg_.rect_walls.size());
    parallel_particles([&](std::size_t i) {
        for (std::size_t w = 0; w < cfg_.line_walls.size(); ++w) {
            const LineWall& seg = cfg_.line_walls[w];
            const ClosestPoint cp = closest_point_line(state_.positions[i], seg);
            if (cp.distance >= state_.radii[i]) continue;
            const auto partner = ContactPartner::make_wall(PartnerKind::line_wall, seg.material_id);
            const auto geom =
                contact_geometry(state_.positions[i], state_.radii[i], state_.velocities[i],
                                 state_.angular_velocities[i], cp.point, partner);
            if (!geom) continue;
            apply_wall_contact(i, ContactTable::wall_id(rect_count + static_cast<int>(w)), *geom,
                               seg.material_id, "CollideLine");
        }
    });
}

double Simulation::mean_coordination() const {
    if (state_.size() == 0) return 0.0;
    const std::uint64_t total =
        std::accumulate(pp_contact_count_.begin(), pp_contact_count_.end(), std::uint64_t{0});
    return static_cast<double>(total) / static_cast<double>(state_.size());
}

void Simulation::run_force_phase(StepMetrics* metrics, bool record_traces) {
    using clock = std::chrono::steady_clock;
    auto timed = [&](Kernel k, auto&& fn) {
        const auto t0 = clock::now();
        fn();
        if (metrics) {
            metrics->kernel_wall_ns[static_cast<int>(k)] =
                std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - t0).count();
        }
    };

    timed(Kernel::calc_hash, [&] { kernel_calc_hash(); });
    timed(Kernel::bitonic_sort, [&] { kernel_bitonic_sort(); });
    timed(Kernel::find_cell_bounds_and_reorder, [&] { kernel_find_cell_bounds_and_reorder(); });
    zero_forces();
    timed(Kernel::force_gravity, [&] { kernel_force_gravity(); });
    timed(Kernel::initialize_contact_ids, [&] { kernel_initialize_contact_ids(); });
    timed(Kernel::collide, [&] { kernel_collide(cfg_.run.collide_variant, record_traces); });
    timed(Kernel::collide_rectangle, [&] { kernel_collide_rectangle(); });
    timed(Kernel::collide_line, [&] { kernel_collide_line(); });

    if (metrics) {
        metrics->clamps = clamp_count_;
        metrics->sort_stats = order_.sort_stats;
        std::int64_t contacts = 0;
        std::int64_t pp = 0;
        int max_per_particle = 0;
        double friction_max = 0.0;
        for (std::size_t i = 0; i < state_.size(); ++i) {
            const int per = static_cast<int>(pp_contact_count_[i] + wall_contact_count_[i]);
            contacts += per;
            pp += pp_contact_count_[i];
            max_per_particle = std::max(max_per_particle, per);
            friction_max = std::max(friction_max, friction_ratio_[i]);
        }
        metrics->contacts = contacts;
        metrics->pp_contact_events = pp;
        metrics->max_contacts_per_particle = max_per_particle;
        metrics->friction_max_ratio = friction_max;
        if (record_traces) {
            const WarpReport report = model_report(traces_, cfg_.warp);
            metrics->model_cycles_baseline = report.cycles_baseline;
            metrics->model_cycles_two_phase = report.cycles_two_phase;
            metrics->utilization_baseline = report.utilization_baseline;
            metrics->utilization_two_phase = report.utilization_two_phase;
        }
    }
}

StepMetrics Simulation::step() {
    using clock = std::chrono::steady_clock;
    StepMetrics metrics;
    metrics.step = ++step_index_;

    const auto t0 = clock::now();
    kernel_integrate();
    metrics.kernel_wall_ns[static_cast<int>(Kernel::integrate)] =
        std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - t0).count();

    run_force_phase(&metrics, record_traces_);
    return metrics;
}

}  // namespace demforge
