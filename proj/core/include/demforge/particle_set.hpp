#pragma once

#include <cstdint>
#include <vector>

#include "demforge/vec3.hpp"

namespace demforge {

/// Structure-of-arrays particle state. `ids` carries the stable creation
/// identity through the per-step cell-order reordering; everything else is
/// physical state. All arrays always have equal length.
struct ParticleSet {
    std::vector<std::uint32_t> ids;
    std::vector<Vec3> positions;           // m
    std::vector<Vec3> velocities;          // m/s
    std::vector<Vec3> angular_velocities;  // rad/s
    std::vector<double> radii;             // m
    std::vector<double> masses;            // kg
    std::vector<std::uint32_t> material_ids;

    std::size_t size() const { return positions.size(); }

    void push_back(std::uint32_t id, const Vec3& pos, const Vec3& vel, const Vec3& angvel,
                   double radius, double mass, std::uint32_t material);

    double max_radius() const;

    /// Permutes every attribute array: new slot i takes old index perm[i].
    void apply_order(const std::vector<std::uint32_t>& perm);

    /// Throws ConfigError on length mismatches, non-positive radii/masses,
    /// or non-finite state.
    void validate() const;

    bool operator==(const ParticleSet&) const = default;
};

/// Per-particle force and torque accumulators for one step.
struct ForceAccumulator {
    std::vector<Vec3> force;   // N
    std::vector<Vec3> torque;  // N*m

    void resize(std::size_t n) {
        force.resize(n);
        torque.resize(n);
    }
    void zero();

    bool operator==(const ForceAccumulator&) const = default;
};

Vec3 total_momentum(const ParticleSet& state);

/// Linear plus rotational kinetic energy, with I = (2/5) m r^2.
double total_kinetic_energy(const ParticleSet& state);

}  // namespace demforge
