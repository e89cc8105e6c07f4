#include "demforge/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "demforge/error.hpp"
#include "demforge/geometry.hpp"
#include "demforge/rng.hpp"

namespace demforge {

namespace {

struct LatticeDims {
    int nx, ny, nz;
    std::int64_t slots() const { return static_cast<std::int64_t>(nx) * ny * nz; }
};

LatticeDims fit_dims(const Vec3& extent, double spacing) {
    LatticeDims d;
    d.nx = std::max(1, static_cast<int>(std::floor(extent.x / spacing)));
    d.ny = std::max(1, static_cast<int>(std::floor(extent.y / spacing)));
    d.nz = std::max(1, static_cast<int>(std::floor(extent.z / spacing)));
    return d;
}

}  // namespace

double resolve_lattice_spacing(const SimConfig& cfg) {
    if (cfg.particles.lattice_spacing > 0.0) return cfg.particles.lattice_spacing;
    const Vec3 extent = cfg.domain_max - cfg.domain_min;
    const double volume = extent.x * extent.y * extent.z;
    double s = std::cbrt(volume / static_cast<double>(cfg.particles.count));
    // Shrink until the integer lattice holds everyone.
    for (int iter = 0; iter < 256; ++iter) {
        if (fit_dims(extent, s).slots() >=
            static_cast<std::int64_t>(cfg.particles.count)) {
            break;
        }
        s *= 0.98;
    }
    return s;
}

ParticleSet build_initial_state(const SimConfig& cfg) {
    ParticleSet state;
    const double r = cfg.particles.radius;
    const std::uint32_t material = cfg.particle_material_id();
    const Vec3 extent = cfg.domain_max - cfg.domain_min;

    if (cfg.particles.mode == InitMode::headon) {
        const double gap = cfg.particles.headon_gap >= 0.0 ? cfg.particles.headon_gap : 0.1 * r;
        const double half = r + 0.5 * gap;
        const Vec3 center = cfg.domain_min + extent * 0.5;
        const double v = 0.5 * cfg.particles.headon_speed;
        if (half + r > 0.5 * extent.x) {
            throw ConfigError("domain too small for the head-on pair along x");
        }
        state.push_back(0, center - Vec3{half, 0, 0}, Vec3{v, 0, 0}, Vec3{}, r,
                        cfg.particles.mass, material);
        state.push_back(1, center + Vec3{half, 0, 0}, Vec3{-v, 0, 0}, Vec3{}, r,
                        cfg.particles.mass, material);
        return state;
    }

    const double spacing = resolve_lattice_spacing(cfg);
    if (!(spacing > 2.0 * r)) {
        throw ConfigError("domain too small: lattice spacing " + std::to_string(spacing) +
                          " does not exceed the particle diameter");
    }
    const LatticeDims dims = fit_dims(extent, spacing);
    if (dims.slots() < static_cast<std::int64_t>(cfg.particles.count)) {
        throw ConfigError("domain too small for particles.count at lattice spacing " +
                          std::to_string(spacing));
    }

    const double margin = spacing - 2.0 * r;
    double jitter = cfg.particles.jitter;
    if (jitter < 0.0) jitter = 0.1 * margin;
    // Worst case two neighbors move toward each other by jitter*sqrt(3)
    // each; keep that strictly below the free gap.
    const double jitter_limit = margin / (2.0 * std::sqrt(3.0));
    if (jitter > jitter_limit) {
        throw ConfigError("particles.jitter " + std::to_string(jitter) +
                          " can produce initial contacts (limit " +
                          std::to_string(jitter_limit) + " for this spacing)");
    }

    // Center the block in x/y, sit it near the bottom in z.
    const Vec3 origin{
        cfg.domain_min.x + 0.5 * (extent.x - (dims.nx - 1) * spacing),
        cfg.domain_min.y + 0.5 * (extent.y - (dims.ny - 1) * spacing),
        cfg.domain_min.z + 0.5 * spacing,
    };

    XorShift64Star rng(cfg.seed);
    std::uint32_t id = 0;
    for (int iz = 0; iz < dims.nz && id < cfg.particles.count; ++iz) {
        for (int iy = 0; iy < dims.ny && id < cfg.particles.count; ++iy) {
            for (int ix = 0; ix < dims.nx && id < cfg.particles.count; ++ix) {
                Vec3 pos{origin.x + ix * spacing, origin.y + iy * spacing,
                         origin.z + iz * spacing};
                pos.x += rng.next_in(-jitter, jitter);
                pos.y += rng.next_in(-jitter, jitter);
                pos.z += rng.next_in(-jitter, jitter);
                state.push_back(id++, pos, Vec3{}, Vec3{}, r, cfg.particles.mass, material);
            }
        }
    }

    // The spacing/jitter bound rules out particle contacts; walls can still
    // cut through the block, so check them explicitly.
    for (std::size_t i = 0; i < state.size(); ++i) {
        for (std::size_t w = 0; w < cfg.rect_walls.size(); ++w) {
            if (closest_point_rectangle(state.positions[i], cfg.rect_walls[w]).distance < r) {
                throw ConfigError("initial particle " + std::to_string(i) +
                                  " contacts wall.rect." + std::to_string(w));
            }
        }
        for (std::size_t w = 0; w < cfg.line_walls.size(); ++w) {
            if (closest_point_line(state.positions[i], cfg.line_walls[w]).distance < r) {
                throw ConfigError("initial particle " + std::to_string(i) +
                                  " contacts wall.line." + std::to_string(w));
            }
        }
    }
    return state;
}

}  // namespace demforge
