#include "setderiv/distance.hpp"

#include <cmath>

#include "setderiv/contour.hpp"
#include "setderiv/errors.hpp"
#include "setderiv/parallel.hpp"

namespace setderiv {

// Exact squared EDT, dimension-decomposed: a column pass finds the nearest
// occupied cell within each column, then a row pass takes the lower envelope
// of the parabolas (x - x')^2 + g(x')^2 (Felzenszwalb/Huttenlocher). All
// arithmetic on integers; doubles only hold exactly-representable ints, so the
// result matches brute force bit for bit. Site indices ride along with the
// envelope, giving the nearest-site map for free.

namespace {

constexpr uint16_t kNoSite = 0xffff;

void column_pass(const GridSet& gs, const std::vector<uint8_t>& occ, std::vector<uint16_t>& gdist,
                 std::vector<uint16_t>& gsite) {
    const int nx = gs.nx, ny = gs.ny;
    parallel_for(0, nx, [&](int x0, int x1) {
        for (int ix = x0; ix < x1; ++ix) {
            int last = -1;
            for (int iy = 0; iy < ny; ++iy) {
                size_t id = gs.idx(ix, iy);
                if (occ[id]) last = iy;
                if (last >= 0) {
                    gdist[id] = (uint16_t)(iy - last);
                    gsite[id] = (uint16_t)last;
                } else {
                    gdist[id] = kNoSite;
                    gsite[id] = kNoSite;
                }
            }
            last = -1;
            for (int iy = ny - 1; iy >= 0; --iy) {
                size_t id = gs.idx(ix, iy);
                if (occ[id]) last = iy;
                if (last >= 0 && (gdist[id] == kNoSite || last - iy < gdist[id])) {
                    gdist[id] = (uint16_t)(last - iy);
                    gsite[id] = (uint16_t)last;
                }
            }
        }
    });
}

void row_pass(const GridSet& gs, const std::vector<uint16_t>& gdist,
              const std::vector<uint16_t>& gsite, DistanceField& out) {
    const int nx = gs.nx;
    parallel_for(0, gs.ny, [&](int y0, int y1) {
        std::vector<int> v(nx);       // envelope parabola positions
        std::vector<double> zb(nx + 1);  // envelope boundaries
        std::vector<int64_t> f(nx);
        for (int iy = y0; iy < y1; ++iy) {
            const size_t row = (size_t)iy * nx;
            int k = -1;
            for (int q = 0; q < nx; ++q) {
                if (gdist[row + q] == kNoSite) continue;
                f[q] = (int64_t)gdist[row + q] * gdist[row + q];
                double s;
                while (true) {
                    if (k < 0) break;
                    int p = v[k];
                    s = ((double)(f[q] + (int64_t)q * q) - (double)(f[p] + (int64_t)p * p)) /
                        (2.0 * (q - p));
                    if (s > zb[k]) break;
                    --k;
                }
                ++k;
                v[k] = q;
                zb[k] = k == 0 ? -kInf : s;
                zb[k + 1] = kInf;
            }
            if (k < 0) fail(ErrorCode::EmptySet, "distance transform of an empty set");
            int j = 0;
            for (int q = 0; q < nx; ++q) {
                while (zb[j + 1] < q) ++j;
                int p = v[j];
                int64_t dd = (int64_t)(q - p) * (q - p) + f[p];
                out.d2[row + q] = (uint32_t)dd;
                out.site[row + q] = (uint32_t)gsite[row + p] * (uint32_t)nx + (uint32_t)p;
            }
        }
    });
}

// Skeleton indicator: a neighbor cell whose site is far from ours but almost
// equidistant marks two projection branches meeting. The separation guard
// keeps adjacent sites along a flat wall from flagging everything.
void multi_pass(const GridSet& gs, const std::vector<uint8_t>& occ, DistanceField& df) {
    const int nx = gs.nx, ny = gs.ny;
    const double tau = 2.0;  // tau_skel in cell units = 2h
    parallel_for(0, ny, [&](int y0, int y1) {
        for (int iy = y0; iy < y1; ++iy)
            for (int ix = 0; ix < nx; ++ix) {
                size_t id = df.idx(ix, iy);
                if (occ[id]) continue;
                uint32_t s0 = df.site[id];
                double d0 = std::sqrt((double)df.d2[id]);
                double sep_min = std::max(3.0, 0.7 * d0);
                int s0x = (int)(s0 % (uint32_t)nx), s0y = (int)(s0 / (uint32_t)nx);
                bool flag = false;
                for (int dy = -1; dy <= 1 && !flag; ++dy)
                    for (int dx = -1; dx <= 1 && !flag; ++dx) {
                        if (dx == 0 && dy == 0) continue;
                        int jx = ix + dx, jy = iy + dy;
                        if (jx < 0 || jy < 0 || jx >= nx || jy >= ny) continue;
                        uint32_t s1 = df.site[df.idx(jx, jy)];
                        if (s1 == s0) continue;
                        int s1x = (int)(s1 % (uint32_t)nx), s1y = (int)(s1 / (uint32_t)nx);
                        double sep = std::hypot((double)(s1x - s0x), (double)(s1y - s0y));
                        if (sep <= sep_min) continue;
                        double d1 = std::hypot((double)(ix - s1x), (double)(iy - s1y));
                        if (std::abs(d1 - d0) < tau) flag = true;
                    }
                df.multi[id] = flag ? 1 : 0;
            }
    });
}

}  // namespace

DistanceField distance_field(const GridSet& gs, const std::vector<uint8_t>& occ) {
    if (gs.nx >= (int)kNoSite || gs.ny >= (int)kNoSite)
        fail(ErrorCode::Other, "grid too large for the distance transform");
    DistanceField df;
    df.nx = gs.nx;
    df.ny = gs.ny;
    df.h = gs.h;
    df.origin = gs.bbox.lo;
    size_t n = (size_t)gs.nx * gs.ny;
    df.d2.assign(n, 0);
    df.site.assign(n, 0);
    df.multi.assign(n, 0);

    std::vector<uint16_t> gdist(n), gsite(n);
    column_pass(gs, occ, gdist, gsite);
    row_pass(gs, gdist, gsite, df);
    gdist.clear();
    gdist.shrink_to_fit();
    gsite.clear();
    gsite.shrink_to_fit();
    multi_pass(gs, occ, df);
    return df;
}

DistanceFieldPair distance_transform(const GridSet& gs) {
    DistanceFieldPair pair;
    pair.source = &gs;
    pair.outer = distance_field(gs, gs.occ);
    if (gs.mode == GridMode::solid) {
        GridSet star = complement_closure(gs);
        pair.inner = distance_field(gs, star.occ);
        pair.has_inner = true;
    }
    return pair;
}

std::vector<uint32_t> brute_force_d2(const GridSet& gs) {
    std::vector<std::pair<int, int>> sites;
    for (int iy = 0; iy < gs.ny; ++iy)
        for (int ix = 0; ix < gs.nx; ++ix)
            if (gs.occupied(ix, iy)) sites.emplace_back(ix, iy);
    std::vector<uint32_t> d2((size_t)gs.nx * gs.ny);
    parallel_for(0, gs.ny, [&](int y0, int y1) {
        for (int iy = y0; iy < y1; ++iy)
            for (int ix = 0; ix < gs.nx; ++ix) {
                int64_t best = INT64_MAX;
                for (auto [sx, sy] : sites) {
                    int64_t dd = (int64_t)(ix - sx) * (ix - sx) + (int64_t)(iy - sy) * (iy - sy);
                    best = std::min(best, dd);
                }
                d2[gs.idx(ix, iy)] = (uint32_t)best;
            }
    });
    return d2;
}

// ----------------------------------------------------------- metric projection

std::optional<Projection> try_projection(const DistanceFieldPair& df, const BoundaryPolyline& bp,
                                         const Vec2& z, ProjSide side) {
    const GridSet& gs = *df.source;
    if (side == ProjSide::inner && !df.has_inner) return std::nullopt;
    const DistanceField& f = df.field(side == ProjSide::inner);

    int ix, iy;
    gs.cell_of(z, ix, iy);
    if (!gs.in_range(ix, iy)) return std::nullopt;
    bool occ_here = side == ProjSide::inner ? !gs.occupied(ix, iy) : gs.occupied(ix, iy);
    if (occ_here && f.d2[f.idx(ix, iy)] == 0) {
        // z sits on the wrong side for this field.
        return std::nullopt;
    }

    size_t id = f.idx(ix, iy);
    Vec2 site = f.site_center(f.site[id]);

    // One refinement step: nearest point on the polyline segments near the
    // site. The site is within O(h) of the true foot, so a small bucket
    // neighborhood suffices.
    Vec2 p = site;
    double best = dist(z, site) + gs.h;
    bool found = false;
    int six, siy;
    gs.cell_of(site, six, siy);
    for (int ring = 1; ring <= 4 && !found; ring *= 2) {
        for (int dy = -ring; dy <= ring; ++dy)
            for (int dx = -ring; dx <= ring; ++dx) {
                for (int segi : bp.segments_in_cell(six + dx, siy + dy)) {
                    const auto& s = bp.segments[segi];
                    Vec2 c = closest_on_segment(bp.vertices[s.a], bp.vertices[s.b], z);
                    double d = dist(z, c);
                    if (d < best) {
                        best = d;
                        p = c;
                        found = true;
                    }
                }
            }
    }

    Projection pr;
    pr.p = p;
    pr.d = dist(z, p);
    if (pr.d <= 0) return std::nullopt;
    Vec2 dir = (z - p) / pr.d;
    pr.u = side == ProjSide::inner ? -dir : dir;  // report the outward normal
    pr.on_skeleton = f.multi[id] != 0;
    return pr;
}

Projection metric_projection(const DistanceFieldPair& df, const BoundaryPolyline& bp,
                             const Vec2& z, ProjSide side) {
    const GridSet& gs = *df.source;
    if (!gs.in_domain(z)) fail(ErrorCode::OutOfDomain, "projection query outside the safe domain");
    int ix, iy;
    gs.cell_of(z, ix, iy);
    if (side == ProjSide::outer && gs.occupied(ix, iy))
        fail(ErrorCode::OnSet, "outer projection of a point on the set");
    if (side == ProjSide::inner && !df.has_inner)
        fail(ErrorCode::ModeViolation, "no inner field in boundary mode");
    auto pr = try_projection(df, bp, z, side);
    if (!pr) fail(ErrorCode::OutOfDomain, "projection failed");
    return *pr;
}

}  // namespace setderiv
