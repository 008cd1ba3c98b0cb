#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "setderiv/shapes.hpp"

namespace setderiv {

enum class GridMode : uint8_t { solid = 0, boundary = 1 };

/// Occupancy raster of a compact set on a uniform grid. Cell (ix,iy) covers
/// [lo + (ix,iy)h, lo + (ix+1,iy+1)h); a cell is occupied iff its center lies
/// in the set (solid) or within h/2 of the curve (boundary mode). The grid is
/// snapped to the global lattice of multiples of h so axis-aligned boundaries
/// at multiples of h fall exactly between cell centers.
struct GridSet {
    BBox bbox;
    double h = 0;
    int nx = 0, ny = 0;
    GridMode mode = GridMode::solid;
    double margin = 0;  // declared max probe distance; the raster is padded by it
    bool degenerate = false;
    std::vector<uint8_t> occ;  // row-major, idx = iy*nx + ix
    ShapePtr shape;            // analytic source when built from a spec, else null

    size_t idx(int ix, int iy) const { return (size_t)iy * nx + ix; }
    bool in_range(int ix, int iy) const { return ix >= 0 && iy >= 0 && ix < nx && iy < ny; }
    bool occupied(int ix, int iy) const { return in_range(ix, iy) && occ[idx(ix, iy)] != 0; }
    Vec2 center(int ix, int iy) const {
        return {bbox.lo.x + (ix + 0.5) * h, bbox.lo.y + (iy + 0.5) * h};
    }
    /// Cell containing p (may be out of range; check in_range).
    void cell_of(const Vec2& p, int& ix, int& iy) const {
        ix = (int)std::floor((p.x - bbox.lo.x) / h);
        iy = (int)std::floor((p.y - bbox.lo.y) / h);
    }
    bool contains_point(const Vec2& p) const {
        int ix, iy;
        cell_of(p, ix, iy);
        return occupied(ix, iy);
    }
    size_t count_occupied() const;
    double area() const { return (double)count_occupied() * h * h; }
    /// True if p is inside the bbox shrunk by the margin.
    bool in_domain(const Vec2& p) const {
        return p.x >= bbox.lo.x + margin && p.x <= bbox.hi.x - margin &&
               p.y >= bbox.lo.y + margin && p.y <= bbox.hi.y - margin;
    }
};

/// Rasterize a shape with a margin of unoccupied cells on all sides. The
/// margin doubles as the declared maximum probe distance for everything
/// downstream; too small a margin is an error, not a silent clip.
GridSet build_grid_set(const ShapePtr& shape, double h, double margin);

/// Same, but on an explicitly given (pre-snapped) bounding box.
GridSet build_grid_set_on(const ShapePtr& shape, double h, double margin, const BBox& box);

/// Grid-scale closure of the complement: the unoccupied cells plus the layer
/// of occupied cells 4-adjacent to them.
GridSet complement_closure(const GridSet& gs);

/// Portable bitmap format: 16-byte header (magic "SDGS", version u16, nx u32,
/// ny u32, mode u8, 1 pad byte) + row-major bit-packed occupancy + five
/// little-endian f64 (bbox lo/hi, h).
void save_sdgs(const GridSet& gs, const std::string& path);
GridSet load_sdgs(const std::string& path);

void check_invariants(const GridSet& gs);

}  // namespace setderiv
