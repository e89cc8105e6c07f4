#include "demforge/grid.hpp"

#include <algorithm>
#include <cmath>

#include "demforge/error.hpp"

namespace demforge {

UniformGrid make_grid(const Vec3& box_min, const Vec3& box_max, double r_max, double h) {
    const Vec3 extent = box_max - box_min;
    if (!(extent.x > 0.0 && extent.y > 0.0 && extent.z > 0.0)) {
        throw ConfigError("domain box is degenerate (min must be strictly below max)");
    }
    if (h <= 0.0) h = 2.0 * r_max * (1.0 + 1e-6);
    if (!(h > 0.0)) throw ConfigError("grid.cell_size must be positive");

    UniformGrid g;
    g.origin = box_min;
    g.cell_size = h;
    g.nx = std::max(1, static_cast<int>(std::ceil(extent.x / h)));
    g.ny = std::max(1, static_cast<int>(std::ceil(extent.y / h)));
    g.nz = std::max(1, static_cast<int>(std::ceil(extent.z / h)));
    if (g.cell_count() > (std::int64_t{1} << 31)) {
        throw ConfigError("grid has more than 2^31 cells; increase grid.cell_size");
    }
    return g;
}

CellCoords cell_coords(const Vec3& position, const UniformGrid& grid) {
    const Vec3 rel = position - grid.origin;
    const double inv_h = 1.0 / grid.cell_size;
    int cx = static_cast<int>(std::floor(rel.x * inv_h));
    int cy = static_cast<int>(std::floor(rel.y * inv_h));
    int cz = static_cast<int>(std::floor(rel.z * inv_h));
    bool clamped = false;
    auto clamp_axis = [&clamped](int c, int dim) {
        if (c < 0) {
            clamped = true;
            return 0;
        }
        if (c >= dim) {
            clamped = true;
            return dim - 1;
        }
        return c;
    };
    cx = clamp_axis(cx, grid.nx);
    cy = clamp_axis(cy, grid.ny);
    cz = clamp_axis(cz, grid.nz);
    return {cx, cy, cz, clamped};
}

std::uint32_t calc_hash(const Vec3& position, const UniformGrid& grid, bool* clamped) {
    const CellCoords c = cell_coords(position, grid);
    if (clamped) *clamped = c.clamped;
    return grid.linear_index(c.cx, c.cy, c.cz);
}

int neighbor_cells(std::uint32_t cell_index, const UniformGrid& grid,
                   std::array<std::uint32_t, 27>& out) {
    const int cx = static_cast<int>(cell_index % static_cast<std::uint32_t>(grid.nx));
    const int rest = static_cast<int>(cell_index / static_cast<std::uint32_t>(grid.nx));
    const int cy = rest % grid.ny;
    const int cz = rest / grid.ny;

    int count = 0;
    for (int dz = -1; dz <= 1; ++dz) {
        const int z = cz + dz;
        if (z < 0 || z >= grid.nz) continue;
        for (int dy = -1; dy <= 1; ++dy) {
            const int y = cy + dy;
            if (y < 0 || y >= grid.ny) continue;
            for (int dx = -1; dx <= 1; ++dx) {
                const int x = cx + dx;
                if (x < 0 || x >= grid.nx) continue;
                out[count++] = grid.linear_index(x, y, z);
            }
        }
    }
    return count;
}

}  // namespace demforge
