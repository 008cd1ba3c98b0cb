#pragma once

#include <unordered_map>
#include <vector>

#include "setderiv/grid.hpp"

namespace setderiv {

/// Subcell boundary contour. Segments are oriented so the set lies on the
/// left; the outward normal is the traversal direction rotated -90 degrees.
/// For boundary-mode sets the "contour" is the curve itself and orientation
/// carries no meaning.
struct BoundaryPolyline {
    struct Segment {
        int a = 0, b = 0;   // vertex indices
        double length = 0;
        Vec2 normal;        // unit outward normal
        Vec2 midpoint;
    };

    std::vector<Vec2> vertices;
    std::vector<Segment> segments;
    double total_length = 0;

    // Spatial index: grid cell -> segment ids, for subcell projection.
    int nx = 0, ny = 0;
    double h = 0;
    Vec2 origin;
    std::unordered_map<int64_t, std::vector<int>> buckets;

    const std::vector<int>& segments_in_cell(int ix, int iy) const {
        static const std::vector<int> empty;
        auto it = buckets.find((int64_t)iy * nx + ix);
        return it == buckets.end() ? empty : it->second;
    }

    void build_index(const GridSet& gs);
};

/// Extract the boundary of a grid set. Solid sets with an analytic source use
/// marching squares on the shape's signed distance sampled at cell corners;
/// bitmap-only solid sets fall back to corner-averaged occupancy. Curve
/// shapes contribute their segments directly, chopped to ~h.
BoundaryPolyline extract_boundary(const GridSet& gs);

}  // namespace setderiv
