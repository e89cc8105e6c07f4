#include "demforge/particle_set.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "demforge/error.hpp"
#include "demforge/sorted_order.hpp"

namespace demforge {

void ParticleSet::push_back(std::uint32_t id, const Vec3& pos, const Vec3& vel,
                            const Vec3& angvel, double radius, double mass,
                            std::uint32_t material) {
    ids.push_back(id);
    positions.push_back(pos);
    velocities.push_back(vel);
    angular_velocities.push_back(angvel);
    radii.push_back(radius);
    masses.push_back(mass);
    material_ids.push_back(material);
}

double ParticleSet::max_radius() const {
    double r = 0.0;
    for (double v : radii) r = std::max(r, v);
    return r;
}

void ParticleSet::apply_order(const std::vector<std::uint32_t>& perm) {
    ids = apply_permutation(ids, perm);
    positions = apply_permutation(positions, perm);
    velocities = apply_permutation(velocities, perm);
    angular_velocities = apply_permutation(angular_velocities, perm);
    radii = apply_permutation(radii, perm);
    masses = apply_permutation(masses, perm);
    material_ids = apply_permutation(material_ids, perm);
}

void ParticleSet::validate() const {
    const std::size_t n = positions.size();
    if (ids.size() != n || velocities.size() != n || angular_velocities.size() != n ||
        radii.size() != n || masses.size() != n || material_ids.size() != n) {
        throw ConfigError("particle attribute arrays have mismatched lengths");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(radii[i] > 0.0)) {
            throw ConfigError("particle " + std::to_string(ids[i]) + ": radius must be > 0");
        }
        if (!(masses[i] > 0.0)) {
            throw ConfigError("particle " + std::to_string(ids[i]) + ": mass must be > 0");
        }
        if (!is_finite(positions[i]) || !is_finite(velocities[i]) ||
            !is_finite(angular_velocities[i])) {
            throw ConfigError("particle " + std::to_string(ids[i]) + ": non-finite state");
        }
    }
}

void ForceAccumulator::zero() {
    std::fill(force.begin(), force.end(), Vec3{});
    std::fill(torque.begin(), torque.end(), Vec3{});
}

Vec3 total_momentum(const ParticleSet& state) {
    Vec3 p;
    for (std::size_t i = 0; i < state.size(); ++i) p += state.velocities[i] * state.masses[i];
    return p;
}

double total_kinetic_energy(const ParticleSet& state) {
    double e = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        const double inertia = 0.4 * state.masses[i] * state.radii[i] * state.radii[i];
        e += 0.5 * state.masses[i] * norm_squared(state.velocities[i]) +
             0.5 * inertia * norm_squared(state.angular_velocities[i]);
    }
    return e;
}

}  // namespace demforge
