#pragma once

#include "demforge/particle_set.hpp"
#include "demforge/sim_config.hpp"

namespace demforge {

/// Builds the initial particle state for `run`:
///  - lattice: particles on a uniform grid, jittered by the seeded
///    xorshift64* source, verified non-contacting (pairwise and against
///    every configured wall);
///  - headon: two particles approaching each other along x.
/// Throws ConfigError when the domain cannot hold the requested lattice or
/// the jitter could produce contacts.
ParticleSet build_initial_state(const SimConfig& cfg);

/// Lattice spacing that `build_initial_state` will use (resolves the
/// auto-fit when particles.lattice_spacing is 0).
double resolve_lattice_spacing(const SimConfig& cfg);

}  // namespace demforge
