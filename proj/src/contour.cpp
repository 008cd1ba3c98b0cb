#include "setderiv/contour.hpp"

#include <array>
#include <cmath>

#include "setderiv/errors.hpp"

namespace setderiv {

// Marching squares over cell corners. A corner value is either the analytic
// signed distance (negative inside) or, for raw bitmaps, 0.5 minus the mean
// occupancy of the four cells meeting at the corner. Crossings are placed by
// linear interpolation, which pins axis-aligned boundaries at lattice
// coordinates exactly and keeps smooth boundaries within O(h^2).

namespace {

struct SegmentSoup {
    std::vector<Vec2> pts;
    std::vector<std::pair<int, int>> segs;  // oriented: inside on the left
    std::unordered_map<int64_t, int> edge_vertex;

    int vertex_on_edge(int64_t key, const Vec2& p) {
        auto it = edge_vertex.find(key);
        if (it != edge_vertex.end()) return it->second;
        int id = (int)pts.size();
        pts.push_back(p);
        edge_vertex.emplace(key, id);
        return id;
    }
};

// Edge keys: horizontal edge right of corner (cx,cy) and vertical edge above
// it, disambiguated by a direction bit.
int64_t hkey(int cx, int cy, int nxc) { return ((int64_t)cy * nxc + cx) * 2; }
int64_t vkey(int cx, int cy, int nxc) { return ((int64_t)cy * nxc + cx) * 2 + 1; }

}  // namespace

void BoundaryPolyline::build_index(const GridSet& gs) {
    nx = gs.nx;
    ny = gs.ny;
    h = gs.h;
    origin = gs.bbox.lo;
    buckets.clear();
    for (int i = 0; i < (int)segments.size(); ++i) {
        const auto& s = segments[i];
        const Vec2& a = vertices[s.a];
        const Vec2& b = vertices[s.b];
        int ax = (int)std::floor((std::min(a.x, b.x) - origin.x) / h);
        int bx = (int)std::floor((std::max(a.x, b.x) - origin.x) / h);
        int ay = (int)std::floor((std::min(a.y, b.y) - origin.y) / h);
        int by = (int)std::floor((std::max(a.y, b.y) - origin.y) / h);
        for (int iy = ay; iy <= by; ++iy)
            for (int ix = ax; ix <= bx; ++ix)
                buckets[(int64_t)iy * nx + ix].push_back(i);
    }
}

namespace {

BoundaryPolyline from_curve_shape(const GridSet& gs) {
    BoundaryPolyline bp;
    auto segs = gs.shape->curve_segments(gs.h);
    for (const auto& cs : segs) {
        int a = (int)bp.vertices.size();
        bp.vertices.push_back(cs.a);
        bp.vertices.push_back(cs.b);
        BoundaryPolyline::Segment s;
        s.a = a;
        s.b = a + 1;
        s.length = dist(cs.a, cs.b);
        if (s.length <= 0) continue;
        Vec2 dir = (cs.b - cs.a) / s.length;
        s.normal = {dir.y, -dir.x};
        s.midpoint = (cs.a + cs.b) * 0.5;
        bp.total_length += s.length;
        bp.segments.push_back(s);
    }
    bp.build_index(gs);
    return bp;
}

BoundaryPolyline from_bitmap_chain(const GridSet& gs) {
    // Boundary-mode bitmap with no analytic source: chain adjacent occupied
    // centers. Crude but only needed for raw thin rasters.
    BoundaryPolyline bp;
    std::unordered_map<int64_t, int> vid;
    auto vertex = [&](int ix, int iy) {
        int64_t key = (int64_t)iy * gs.nx + ix;
        auto it = vid.find(key);
        if (it != vid.end()) return it->second;
        int id = (int)bp.vertices.size();
        bp.vertices.push_back(gs.center(ix, iy));
        vid.emplace(key, id);
        return id;
    };
    const int off[4][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}};
    for (int iy = 0; iy < gs.ny; ++iy)
        for (int ix = 0; ix < gs.nx; ++ix) {
            if (!gs.occupied(ix, iy)) continue;
            for (auto& o : off) {
                int jx = ix + o[0], jy = iy + o[1];
                if (!gs.occupied(jx, jy)) continue;
                // Skip diagonals that shortcut an existing 4-connected path.
                if (o[0] != 0 && o[1] != 0 && (gs.occupied(ix, jy) || gs.occupied(jx, iy)))
                    continue;
                BoundaryPolyline::Segment s;
                s.a = vertex(ix, iy);
                s.b = vertex(jx, jy);
                Vec2 a = bp.vertices[s.a], b = bp.vertices[s.b];
                s.length = dist(a, b);
                Vec2 dir = (b - a) / s.length;
                s.normal = {dir.y, -dir.x};
                s.midpoint = (a + b) * 0.5;
                bp.total_length += s.length;
                bp.segments.push_back(s);
            }
        }
    if (bp.segments.empty()) {
        // Isolated cells: represent each as a tiny cross so probes have a foot.
        for (int iy = 0; iy < gs.ny; ++iy)
            for (int ix = 0; ix < gs.nx; ++ix)
                if (gs.occupied(ix, iy)) {
                    Vec2 c = gs.center(ix, iy);
                    int a = (int)bp.vertices.size();
                    bp.vertices.push_back({c.x - gs.h / 4, c.y});
                    bp.vertices.push_back({c.x + gs.h / 4, c.y});
                    BoundaryPolyline::Segment s;
                    s.a = a;
                    s.b = a + 1;
                    s.length = gs.h / 2;
                    s.normal = {0, 1};
                    s.midpoint = c;
                    bp.total_length += s.length;
                    bp.segments.push_back(s);
                }
    }
    bp.build_index(gs);
    return bp;
}

}  // namespace

BoundaryPolyline extract_boundary(const GridSet& gs) {
    if (gs.count_occupied() == 0) fail(ErrorCode::EmptySet, "no boundary: empty set");

    if (gs.mode == GridMode::boundary)
        return gs.shape ? from_curve_shape(gs) : from_bitmap_chain(gs);

    const bool analytic = gs.shape != nullptr;
    const int nx = gs.nx, ny = gs.ny;
    const int nxc = nx + 1;

    // Candidate cells: within one cell of an occupancy transition.
    std::vector<uint8_t> cand((size_t)nx * ny, 0);
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            bool o = gs.occupied(ix, iy);
            if (o == gs.occupied(ix + 1, iy) && o == gs.occupied(ix - 1, iy) &&
                o == gs.occupied(ix, iy + 1) && o == gs.occupied(ix, iy - 1))
                continue;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    int jx = ix + dx, jy = iy + dy;
                    if (gs.in_range(jx, jy)) cand[gs.idx(jx, jy)] = 1;
                }
        }

    auto corner_pos = [&](int cx, int cy) {
        return Vec2{gs.bbox.lo.x + cx * gs.h, gs.bbox.lo.y + cy * gs.h};
    };
    auto corner_value = [&](int cx, int cy) -> double {
        if (analytic) return gs.shape->signed_distance(corner_pos(cx, cy));
        int n = 0;
        n += gs.occupied(cx - 1, cy - 1);
        n += gs.occupied(cx, cy - 1);
        n += gs.occupied(cx - 1, cy);
        n += gs.occupied(cx, cy);
        double v = 0.5 - n / 4.0;
        return v == 0 ? 1e-9 : v;  // break exact half-coverage toward outside
    };
    auto center_value = [&](int ix, int iy) -> double {
        if (analytic) return gs.shape->signed_distance(gs.center(ix, iy));
        return gs.occupied(ix, iy) ? -0.5 : 0.5;
    };

    SegmentSoup soup;
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            if (!cand[gs.idx(ix, iy)]) continue;
            // Corners in CCW order starting lower-left.
            double v0 = corner_value(ix, iy);
            double v1 = corner_value(ix + 1, iy);
            double v2 = corner_value(ix + 1, iy + 1);
            double v3 = corner_value(ix, iy + 1);
            int code = (v0 < 0) | ((v1 < 0) << 1) | ((v2 < 0) << 2) | ((v3 < 0) << 3);
            if (code == 0 || code == 15) continue;

            Vec2 c0 = corner_pos(ix, iy), c1 = corner_pos(ix + 1, iy);
            Vec2 c2 = corner_pos(ix + 1, iy + 1), c3 = corner_pos(ix, iy + 1);
            auto cross = [&](const Vec2& a, const Vec2& b, double va, double vb) {
                double t = va / (va - vb);
                return a + (b - a) * std::clamp(t, 0.0, 1.0);
            };
            // Edge ids: 0 bottom, 1 right, 2 top, 3 left.
            auto edge_vertex = [&](int e) -> int {
                switch (e) {
                    case 0: return soup.vertex_on_edge(hkey(ix, iy, nxc), cross(c0, c1, v0, v1));
                    case 1:
                        return soup.vertex_on_edge(vkey(ix + 1, iy, nxc), cross(c1, c2, v1, v2));
                    case 2:
                        return soup.vertex_on_edge(hkey(ix, iy + 1, nxc), cross(c3, c2, v3, v2));
                    default: return soup.vertex_on_edge(vkey(ix, iy, nxc), cross(c0, c3, v0, v3));
                }
            };
            // Oriented exit->entry pairs with the set on the left.
            auto emit = [&](int efrom, int eto) {
                soup.segs.emplace_back(edge_vertex(efrom), edge_vertex(eto));
            };
            switch (code) {
                case 1: emit(0, 3); break;
                case 2: emit(1, 0); break;
                case 3: emit(1, 3); break;
                case 4: emit(2, 1); break;
                case 6: emit(2, 0); break;
                case 7: emit(2, 3); break;
                case 8: emit(3, 2); break;
                case 9: emit(0, 2); break;
                case 11: emit(1, 2); break;
                case 12: emit(3, 1); break;
                case 13: emit(0, 1); break;
                case 14: emit(3, 0); break;
                case 5:  // ambiguous: resolve with the cell center
                    if (center_value(ix, iy) < 0) {
                        emit(0, 1);
                        emit(2, 3);
                    } else {
                        emit(0, 3);
                        emit(2, 1);
                    }
                    break;
                case 10:
                    if (center_value(ix, iy) < 0) {
                        emit(3, 0);
                        emit(1, 2);
                    } else {
                        emit(1, 0);
                        emit(3, 2);
                    }
                    break;
                default: break;
            }
        }
    }

    BoundaryPolyline bp;
    bp.vertices = std::move(soup.pts);
    bp.segments.reserve(soup.segs.size());
    for (auto [a, b] : soup.segs) {
        BoundaryPolyline::Segment s;
        s.a = a;
        s.b = b;
        Vec2 pa = bp.vertices[a], pb = bp.vertices[b];
        s.length = dist(pa, pb);
        if (s.length <= 1e-300) continue;
        Vec2 dir = (pb - pa) / s.length;
        s.normal = {dir.y, -dir.x};
        s.midpoint = (pa + pb) * 0.5;
        bp.total_length += s.length;
        bp.segments.push_back(s);
    }
    if (bp.segments.empty()) fail(ErrorCode::EmptySet, "degenerate set has no contour");
    bp.build_index(gs);
    return bp;
}

}  // namespace setderiv
