#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "demforge/bitonic_sort.hpp"
#include "demforge/contact_table.hpp"
#include "demforge/geometry.hpp"
#include "demforge/grid.hpp"
#include "demforge/particle_set.hpp"
#include "demforge/sim_config.hpp"
#include "demforge/sorted_order.hpp"
#include "demforge/warp_model.hpp"

namespace demforge {

/// The nine kernels of one simulation step, in execution order.
enum class Kernel {
    integrate,
    calc_hash,
    bitonic_sort,
    find_cell_bounds_and_reorder,
    force_gravity,
    initialize_contact_ids,
    collide,
    collide_rectangle,
    collide_line,
};
inline constexpr int kKernelCount = 9;
const char* kernel_name(Kernel k);

struct StepMetrics {
    std::int64_t step = 0;
    std::array<std::int64_t, kKernelCount> kernel_wall_ns{};
    double model_cycles_baseline = 0.0;
    double model_cycles_two_phase = 0.0;
    double utilization_baseline = 1.0;
    double utilization_two_phase = 1.0;
    std::int64_t contacts = 0;                // contact events incl. walls
    std::int64_t pp_contact_events = 0;       // particle-particle events only
    int max_contacts_per_particle = 0;
    std::int64_t clamps = 0;                  // out-of-domain cell clamps
    double friction_max_ratio = 0.0;          // max |F_t| / (mu |F_n|) observed
    BitonicStats sort_stats;
};

/// Semi-implicit update of one particle set from accumulated forces:
/// v += (F/m) dt, x += v dt (new v), w += (T/I) dt with I = (2/5) m r^2.
/// Throws KernelError on a non-finite force, naming the particle.
void integrate(ParticleSet& state, const ForceAccumulator& forces, double dt);

/// F += m g per particle; torque untouched.
void force_gravity(const ParticleSet& state, ForceAccumulator& forces, const Vec3& gravity);

/// The simulation: owns state, forces, the contact table, the grid, and the
/// per-particle traversal traces. Construction runs one force-only pass so
/// that the first step's Integrate sees the forces of the initial
/// configuration. Copyable, so callers can fork identical simulations.
class Simulation {
  public:
    Simulation(ParticleSet initial, SimConfig config);

    /// One full step in kernel order. Throws KernelError annotated with the
    /// kernel name; the CLI adds the step number.
    StepMetrics step();

    /// Whether step() records traversal traces and runs the warp model.
    void set_record_traces(bool on) { record_traces_ = on; }

    /// Switches the Collide variant used by step().
    void set_collide_variant(CollideVariant v) { cfg_.run.collide_variant = v; }

    // Individual kernels, exposed so tests and `verify` can compose them.
    void kernel_integrate();
    void kernel_calc_hash();
    void kernel_bitonic_sort();
    void kernel_find_cell_bounds_and_reorder();
    void kernel_force_gravity();
    void kernel_initialize_contact_ids();
    void kernel_collide(CollideVariant variant, bool record_traces);
    void kernel_collide_rectangle();
    void kernel_collide_line();
    void zero_forces();

    const SimConfig& config() const { return cfg_; }
    const UniformGrid& grid() const { return grid_; }
    const ParticleSet& particles() const { return state_; }
    ParticleSet& particles() { return state_; }
    const ForceAccumulator& forces() const { return forces_; }
    ForceAccumulator& forces() { return forces_; }
    const ContactTable& contact_table() const { return table_; }
    ContactTable& contact_table() { return table_; }
    const SortedOrder& order() const { return order_; }
    const std::vector<LaneTrace>& traces() const { return traces_; }
    std::int64_t step_index() const { return step_index_; }
    std::int64_t last_clamp_count() const { return clamp_count_; }

    /// True when the grid cell size admits the 27-cell neighborhood
    /// guarantee (h >= 2 r_max).
    bool neighborhood_sufficient() const { return neighborhood_sufficient_; }

    /// Mean number of particle-particle contacts per particle in the last
    /// collide call (each pair counted from both sides).
    double mean_coordination() const;

  private:
    void run_force_phase(StepMetrics* metrics, bool record_traces);
    std::optional<ContactGeometry> check_pair(std::size_t i, std::uint32_t j) const;
    void apply_pair_contact(std::size_t i, std::uint32_t j, const ContactGeometry& geom);
    void apply_wall_contact(std::size_t i, std::int32_t wall_partner, const ContactGeometry& geom,
                            std::uint32_t wall_material, const std::string& kernel);
    template <typename F>
    void parallel_particles(F&& body);

    SimConfig cfg_;
    ParticleSet state_;
    ForceAccumulator forces_;
    ContactTable table_;
    UniformGrid grid_;
    SortedOrder order_;
    std::vector<std::uint32_t> hash_keys_;
    std::vector<LaneTrace> traces_;
    std::vector<std::uint32_t> candidate_count_;
    std::vector<std::uint32_t> pp_contact_count_;
    std::vector<std::uint32_t> wall_contact_count_;
    std::vector<double> friction_ratio_;
    std::vector<double> pair_alpha_;  // per material pair, row-major
    std::vector<double> pair_mu_;
    std::int64_t step_index_ = 0;
    std::int64_t clamp_count_ = 0;
    bool record_traces_ = true;
    bool neighborhood_sufficient_ = true;
};

}  // namespace demforge
