#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "setderiv/grid.hpp"

namespace setderiv {

struct BoundaryPolyline;

/// Exact Euclidean distance field to the occupied cell centers of one grid,
/// with the nearest site recorded per cell. Distances are stored squared in
/// cell units so every value is an exact integer.
struct DistanceField {
    int nx = 0, ny = 0;
    double h = 0;
    Vec2 origin;                 // bbox.lo of the source grid
    std::vector<uint32_t> d2;    // squared distance, cell units
    std::vector<uint32_t> site;  // packed nearest site, iy*nx+ix
    std::vector<uint8_t> multi;  // two far-apart sites tie within tau_skel

    size_t idx(int ix, int iy) const { return (size_t)iy * nx + ix; }
    double dist_cells(int ix, int iy) const { return std::sqrt((double)d2[idx(ix, iy)]); }
    double dist(int ix, int iy) const { return dist_cells(ix, iy) * h; }
    Vec2 site_center(uint32_t packed) const {
        int sy = (int)(packed / (uint32_t)nx), sx = (int)(packed % (uint32_t)nx);
        return {origin.x + (sx + 0.5) * h, origin.y + (sy + 0.5) * h};
    }
};

/// Outer field (against F) and, for solid sets, the inner field (against F*,
/// the grid-scale closure of the complement).
struct DistanceFieldPair {
    DistanceField outer;
    DistanceField inner;  // empty in boundary mode
    bool has_inner = false;
    const GridSet* source = nullptr;

    const DistanceField& field(bool inner_side) const { return inner_side ? inner : outer; }
};

DistanceField distance_field(const GridSet& gs, const std::vector<uint8_t>& occ);
DistanceFieldPair distance_transform(const GridSet& gs);

/// Brute-force oracle for tests; O(cells * sites).
std::vector<uint32_t> brute_force_d2(const GridSet& gs);

enum class ProjSide { outer, inner };

struct Projection {
    Vec2 p;            // nearest boundary point, subcell-refined
    Vec2 u;            // unit direction, always outward-pointing
    double d = 0;      // ||z - p||
    bool on_skeleton = false;
};

/// Metric projection of z with subcell refinement onto the boundary polyline.
/// Outer side requires z off the set; inner side requires z in the interior.
Projection metric_projection(const DistanceFieldPair& df, const BoundaryPolyline& bp,
                             const Vec2& z, ProjSide side);

/// As above but returns nullopt instead of throwing for on-set/out-of-domain.
std::optional<Projection> try_projection(const DistanceFieldPair& df, const BoundaryPolyline& bp,
                                         const Vec2& z, ProjSide side);

}  // namespace setderiv
