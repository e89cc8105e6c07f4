#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "demforge/geometry.hpp"
#include "demforge/materials.hpp"
#include "demforge/vec3.hpp"
#include "demforge/warp_model.hpp"

namespace demforge {

/// How `run` builds the initial particle state.
enum class InitMode {
    lattice,  // jittered uniform lattice, at rest
    headon    // two particles approaching along x (restitution scenario)
};

struct ParticleInitConfig {
    InitMode mode = InitMode::lattice;
    std::uint32_t count = 0;
    double radius = 0.0;            // m
    double mass = 0.0;              // kg
    std::string material;           // name into the material table
    double jitter = -1.0;           // m; < 0 means 0.1 * (spacing - 2r)
    double lattice_spacing = 0.0;   // m; 0 means fit to the domain box
    double headon_gap = -1.0;       // m surface gap; < 0 means 0.1 * r
    double headon_speed = 1.0;      // m/s closing speed
};

struct RunControlConfig {
    std::int64_t steps = 0;
    std::int64_t warmup_steps = 0;
    std::int64_t snapshot_every = 0;  // 0: initial and final snapshots only
    CollideVariant collide_variant = CollideVariant::two_phase;
};

/// Full simulation configuration. The file form is a flat key = value
/// format described in the README; parse_config/serialize_config live in
/// config_io.hpp.
struct SimConfig {
    double dt = 0.0;                 // s
    Vec3 gravity{0.0, 0.0, -9.81};   // m/s^2
    Vec3 domain_min;
    Vec3 domain_max;
    MaterialTable materials;
    std::vector<RectWall> rect_walls;
    std::vector<LineWall> line_walls;
    double grid_cell_size = 0.0;     // m; 0 means 2*r_max*(1+1e-6)
    int contact_capacity = 16;       // K slots per particle
    WarpCostParams warp;
    RunControlConfig run;
    ParticleInitConfig particles;
    std::uint64_t seed = 1;

    /// Cross-field validation; throws ConfigError naming the key.
    void validate() const;

    std::uint32_t particle_material_id() const {
        return materials.index_of(particles.material);
    }
};

}  // namespace demforge
