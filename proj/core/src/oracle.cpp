#include "demforge/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "demforge/contact_mechanics.hpp"
#include "demforge/geometry.hpp"

namespace demforge {

std::vector<std::pair<std::uint32_t, std::uint32_t>> brute_force_contact_pairs(
    const ParticleSet& state) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    const std::size_t n = state.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dist = norm(state.positions[j] - state.positions[i]);
            if (dist < state.radii[i] + state.radii[j]) {
                pairs.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
            }
        }
    }
    return pairs;
}

namespace {

struct Cell {
    int x, y, z;
};

// Cell assignment per the documented rule: floor((p - origin) * (1/h)),
// clamped per axis. Written out here so the oracle does not depend on the
// grid module's code path.
Cell oracle_cell(const Vec3& p, const UniformGrid& grid) {
    const double inv_h = 1.0 / grid.cell_size;
    auto axis = [&](double v, double o, int dim) {
        int c = static_cast<int>(std::floor((v - o) * inv_h));
        return std::clamp(c, 0, dim - 1);
    };
    return {axis(p.x, grid.origin.x, grid.nx), axis(p.y, grid.origin.y, grid.ny),
            axis(p.z, grid.origin.z, grid.nz)};
}

}  // namespace

OracleResult oracle_collide(const ParticleSet& state, const MaterialTable& materials,
                            const UniformGrid& grid, double dt, ContactTable table) {
    const std::size_t n = state.size();
    OracleResult out;
    out.forces.resize(n);
    out.table = std::move(table);

    std::vector<Cell> cells(n);
    for (std::size_t i = 0; i < n; ++i) cells[i] = oracle_cell(state.positions[i], grid);

    // Candidates of one particle, keyed by the position their cell takes in
    // the z-then-y-then-x neighbor enumeration, then by slot index. That is
    // exactly the traversal order of the Collide kernel.
    std::vector<std::pair<int, std::uint32_t>> candidates;

    for (std::size_t i = 0; i < n; ++i) {
        candidates.clear();
        const Cell ci = cells[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const Cell cj = cells[j];
            const int dx = cj.x - ci.x;
            const int dy = cj.y - ci.y;
            const int dz = cj.z - ci.z;
            if (dx < -1 || dx > 1 || dy < -1 || dy > 1 || dz < -1 || dz > 1) continue;
            const int visit = ((dz + 1) * 3 + (dy + 1)) * 3 + (dx + 1);
            candidates.emplace_back(visit, static_cast<std::uint32_t>(j));
        }
        std::sort(candidates.begin(), candidates.end());

        for (const auto& [visit, j] : candidates) {
            const auto geom = contact_geometry(
                state.positions[i], state.radii[i], state.positions[j], state.radii[j],
                state.velocities[i], state.velocities[j], state.angular_velocities[i],
                state.angular_velocities[j]);
            if (!geom) continue;

            const std::uint32_t mi = state.material_ids[i];
            const std::uint32_t mj = state.material_ids[j];
            const ContactCoefficients coeffs = contact_coefficients(
                geom->overlap, materials.params(mi), materials.params(mj), state.radii[i],
                state.radii[j], state.masses[i], state.masses[j],
                materials.pair_restitution(mi, mj), false);

            ContactSlot& slot = out.table.lookup_or_insert(
                static_cast<std::uint32_t>(i), static_cast<std::int32_t>(j), "Oracle");
            const Vec3 delta_t = update_tangential_displacement(slot.delta_t, geom->normal,
                                                                geom->tangential_velocity, dt);
            const ContactForce result = contact_force(*geom, coeffs, delta_t,
                                                      materials.pair_sliding_friction(mi, mj),
                                                      state.radii[i]);
            slot.delta_t = result.new_tangential_displacement;
            out.forces.force[i] += result.force;
            out.forces.torque[i] += result.torque;
            out.contact_events.emplace_back(static_cast<std::uint32_t>(i), j);
        }
    }
    return out;
}

}  // namespace demforge
