#pragma once

#include <random>

#include "demforge/pipeline.hpp"

namespace demforge::benchsupport {

/// Random overlapping packing in a cube, ready for collide benchmarks.
inline Simulation dense_simulation(std::size_t n, std::uint64_t seed) {
    const double r = 0.005;
    const double spacing = 1.8 * r;  // overlapping on purpose
    const int side = static_cast<int>(std::ceil(std::cbrt(static_cast<double>(n))));

    SimConfig cfg;
    cfg.dt = 1e-5;
    cfg.gravity = {};
    cfg.domain_min = {0, 0, 0};
    const double extent = side * spacing + 4 * r;
    cfg.domain_max = {extent, extent, extent};
    MaterialParams mat;
    cfg.materials.add("bead", mat);
    cfg.particles.count = static_cast<std::uint32_t>(n);
    cfg.particles.radius = r;
    cfg.particles.mass = 1e-3;
    cfg.particles.material = "bead";

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> jitter(-0.2 * r, 0.2 * r);
    std::uniform_real_distribution<double> vel(-0.5, 0.5);

    ParticleSet state;
    for (std::size_t i = 0; i < n; ++i) {
        const int ix = static_cast<int>(i) % side;
        const int iy = static_cast<int>(i / side) % side;
        const int iz = static_cast<int>(i / (side * side));
        const Vec3 pos{2 * r + ix * spacing + jitter(rng), 2 * r + iy * spacing + jitter(rng),
                       2 * r + iz * spacing + jitter(rng)};
        state.push_back(static_cast<std::uint32_t>(i), pos, {vel(rng), vel(rng), vel(rng)},
                        {vel(rng), vel(rng), vel(rng)}, r, cfg.particles.mass,
                        0);
    }
    return Simulation(std::move(state), cfg);
}

}  // namespace demforge::benchsupport
