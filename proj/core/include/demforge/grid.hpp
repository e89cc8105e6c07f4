#pragma once

#include <array>
#include <cstdint>

#include "demforge/vec3.hpp"

namespace demforge {

/// Uniform cell decomposition of the simulation box. Cell size must be at
/// least twice the largest particle radius for the 27-cell neighborhood to
/// see every possible contact; construction records (but does not reject)
/// smaller sizes so that `verify` can demonstrate the failure mode.
struct UniformGrid {
    Vec3 origin;
    double cell_size = 0.0;  // h, m
    int nx = 1, ny = 1, nz = 1;

    std::int64_t cell_count() const {
        return static_cast<std::int64_t>(nx) * ny * nz;
    }

    std::uint32_t linear_index(int cx, int cy, int cz) const {
        return static_cast<std::uint32_t>(cx + nx * (cy + static_cast<std::int64_t>(ny) * cz));
    }
};

/// Grid spanning [box_min, box_max] with cells of size h (or the default
/// 2*r_max*(1+1e-6) when h <= 0). Throws ConfigError for degenerate boxes
/// or cell counts beyond 2^31.
UniformGrid make_grid(const Vec3& box_min, const Vec3& box_max, double r_max, double h = 0.0);

struct CellCoords {
    int cx, cy, cz;
    bool clamped;  // position fell outside the grid on some axis
};

/// Cell coordinates of a position: floor((p - origin)/h) clamped per axis.
CellCoords cell_coords(const Vec3& position, const UniformGrid& grid);

/// Linear cell index of a position. `clamped` (optional) is set when the
/// position fell outside the grid.
std::uint32_t calc_hash(const Vec3& position, const UniformGrid& grid, bool* clamped = nullptr);

/// The 3x3x3 neighborhood of a cell, clipped at the domain boundary, in a
/// fixed deterministic order (z outermost, then y, then x). Returns the
/// number of cells written into `out`.
int neighbor_cells(std::uint32_t cell_index, const UniformGrid& grid,
                   std::array<std::uint32_t, 27>& out);

}  // namespace demforge
