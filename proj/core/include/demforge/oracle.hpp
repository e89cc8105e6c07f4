#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "demforge/contact_table.hpp"
#include "demforge/grid.hpp"
#include "demforge/materials.hpp"
#include "demforge/particle_set.hpp"

namespace demforge {

/// All contacting unordered pairs (slot indices, first < second) found by
/// scanning every pair with the plain distance test. No cells, no sorting:
/// this is the completeness reference for the 27-neighborhood search.
std::vector<std::pair<std::uint32_t, std::uint32_t>> brute_force_contact_pairs(
    const ParticleSet& state);

struct OracleResult {
    ForceAccumulator forces;
    ContactTable table;
    /// Directed contact events (owner, partner), in accumulation order.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> contact_events;
};

/// O(N^2) replay of the particle-particle force accumulation. It derives
/// cell membership and the neighbor-block visit order from the documented
/// rules by itself (no sorted ranges, no sort, no neighbor tables), scans
/// all particles for candidates, and applies the identical per-pair physics
/// in the identical per-particle accumulation order. Intended to be run on
/// a cell-ordered state, against the Collide kernel's output.
OracleResult oracle_collide(const ParticleSet& state, const MaterialTable& materials,
                            const UniformGrid& grid, double dt, ContactTable table);

}  // namespace demforge
