#include "demforge/sim_config.hpp"

#include <cmath>
#include <string>

#include "demforge/error.hpp"

namespace demforge {

void SimConfig::validate() const {
    if (!(dt > 0.0)) throw ConfigError("dt: must be > 0");
    if (!is_finite(gravity)) throw ConfigError("gravity: must be finite");
    const Vec3 extent = domain_max - domain_min;
    if (!(extent.x > 0.0 && extent.y > 0.0 && extent.z > 0.0)) {
        throw ConfigError("domain: min must be strictly below max on every axis");
    }
    materials.validate();

    if (particles.count == 0) throw ConfigError("particles.count: must be >= 1");
    if (!(particles.radius > 0.0)) throw ConfigError("particles.radius: must be > 0");
    if (!(particles.mass > 0.0)) throw ConfigError("particles.mass: must be > 0");
    if (!materials.contains(particles.material)) {
        throw ConfigError("particles.material: unknown material '" + particles.material + "'");
    }
    if (particles.mode == InitMode::headon && particles.count != 2) {
        throw ConfigError("particles.count: init=headon requires exactly 2 particles");
    }
    if (particles.lattice_spacing != 0.0 &&
        !(particles.lattice_spacing > 2.0 * particles.radius)) {
        throw ConfigError("particles.lattice_spacing: must exceed the particle diameter");
    }

    if (grid_cell_size < 0.0) throw ConfigError("grid.cell_size: must be > 0");
    if (contact_capacity < 1) throw ConfigError("contacts.capacity: must be >= 1");
    warp.validate();

    if (run.steps < 0) throw ConfigError("run.steps: must be >= 0");
    if (run.warmup_steps < 0) throw ConfigError("run.warmup_steps: must be >= 0");
    if (run.snapshot_every < 0) throw ConfigError("run.snapshot_every: must be >= 0");

    for (std::size_t i = 0; i < rect_walls.size(); ++i) {
        const RectWall& w = rect_walls[i];
        const std::string where = "wall.rect." + std::to_string(i);
        const double lu = norm(w.edge_u);
        const double lv = norm(w.edge_v);
        if (!(lu > 0.0) || !(lv > 0.0)) {
            throw ConfigError(where + ": degenerate rectangle (zero-length edge)");
        }
        if (std::abs(dot(w.edge_u, w.edge_v)) > 1e-9 * lu * lv) {
            throw ConfigError(where + ": edge_u and edge_v must be orthogonal");
        }
        if (w.material_id >= materials.size()) throw ConfigError(where + ": bad material");
    }
    for (std::size_t i = 0; i < line_walls.size(); ++i) {
        const LineWall& w = line_walls[i];
        const std::string where = "wall.line." + std::to_string(i);
        if (!(norm(w.b - w.a) > 0.0)) throw ConfigError(where + ": zero-length segment");
        if (w.material_id >= materials.size()) throw ConfigError(where + ": bad material");
    }
}

}  // namespace demforge
