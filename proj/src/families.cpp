#include "setderiv/families.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "setderiv/errors.hpp"
#include "setderiv/parallel.hpp"

namespace setderiv {

// -------------------------------------------------------------- ConvexBody

double ConvexBody::support(const Vec2& u) const {
    double s = verts.empty() ? -kInf : -kInf;
    for (const auto& v : verts) s = std::max(s, v.dot(u));
    if (verts.empty()) s = 0;
    return s + ball_radius * u.norm();
}

double ConvexBody::face_max_norm(const Vec2& u) const {
    if (verts.empty()) return ball_radius;
    double h = -kInf;
    for (const auto& v : verts) h = std::max(h, v.dot(u));
    double a = 0;
    for (const auto& v : verts)
        if (v.dot(u) >= h - 1e-12 * (1 + std::abs(h))) a = std::max(a, v.norm());
    return a + ball_radius;
}

double ConvexBody::max_norm() const {
    double m = ball_radius;
    for (const auto& v : verts) m = std::max(m, v.norm() + ball_radius);
    return m;
}

Vec2 ConvexBody::steiner_point() const {
    // (1/pi) * integral of h_K(u) u over the unit circle, by fine trapezoid.
    const int N = 4096;
    Vec2 s{0, 0};
    for (int i = 0; i < N; ++i) {
        double th = 2 * M_PI * i / N;
        Vec2 u{std::cos(th), std::sin(th)};
        s += u * support(u);
    }
    return s * (2.0 / N);  // (2pi/N) * (1/pi)
}

double ConvexBody::distance(const Vec2& p) const {
    double d;
    if (verts.empty()) {
        d = p.norm();
    } else if (verts.size() == 1) {
        d = dist(p, verts[0]);
    } else if (verts.size() == 2) {
        d = segment_distance(verts[0], verts[1], p);
    } else {
        bool inside = true;
        d = kInf;
        size_t n = verts.size();
        for (size_t i = 0; i < n; ++i) {
            const Vec2& a = verts[i];
            const Vec2& b = verts[(i + 1) % n];
            if ((b - a).cross(p - a) < 0) inside = false;
            d = std::min(d, segment_distance(a, b, p));
        }
        if (inside) d = 0;
    }
    return std::max(0.0, d - ball_radius);
}

double ConvexBody::distance_scaled(const Vec2& p, double scale) const {
    if (scale <= 0) return p.norm();
    ConvexBody s = *this;
    for (auto& v : s.verts) v = v * scale;
    s.ball_radius *= scale;
    return s.distance(p);
}

bool ConvexBody::convex_ok(int samples) const {
    for (int i = 0; i < samples; ++i) {
        double t1 = 2 * M_PI * i / samples;
        double t2 = 2 * M_PI * ((i + samples / 3) % samples) / samples;
        Vec2 u1{std::cos(t1), std::sin(t1)}, u2{std::cos(t2), std::sin(t2)};
        Vec2 w = u1 + u2;
        if (w.norm() < 1e-9) continue;
        if (support(w) > support(u1) + support(u2) + 1e-9) return false;
    }
    return true;
}

ConvexBody ConvexBody::ball(double r) {
    ConvexBody k;
    k.ball_radius = r;
    return k;
}
ConvexBody ConvexBody::point(Vec2 q) { return {{q}, 0}; }
ConvexBody ConvexBody::segment(Vec2 a, Vec2 b) { return {{a, b}, 0}; }
ConvexBody ConvexBody::square(double side) {
    double s = side / 2;
    return {{{-s, -s}, {s, -s}, {s, s}, {-s, s}}, 0};
}
ConvexBody ConvexBody::polygon(std::vector<Vec2> v) {
    ConvexBody k{std::move(v), 0};
    double area2 = 0;
    size_t n = k.verts.size();
    for (size_t i = 0; i < n; ++i) area2 += k.verts[i].cross(k.verts[(i + 1) % n]);
    if (area2 < 0) std::reverse(k.verts.begin(), k.verts.end());
    for (size_t i = 0; i < n; ++i) {
        Vec2 e1 = k.verts[(i + 1) % n] - k.verts[i];
        Vec2 e2 = k.verts[(i + 2) % n] - k.verts[(i + 1) % n];
        if (e1.cross(e2) < -1e-12) fail(ErrorCode::NonConvex, "structuring body must be convex");
    }
    return k;
}

// -------------------------------------------------------------- FamilySpec

SetQuery FamilySpec::a_query(double eps) const {
    if (a_fiber) {
        SetQuery q;
        auto fn = a_fiber;
        q.fiber_intervals = [fn, eps](int i, const BundleSample& s) { return fn(i, s, eps); };
        return q;
    }
    return a_query_pointwise(eps);
}

SetQuery FamilySpec::a_query_pointwise(double eps) const {
    auto m = member;
    return SetQuery::from_predicate(
        [m, eps](const Vec2& z) { return m(z, eps) != m(z, 0.0); });
}

GridSet FamilySpec::materialize(double eps) const {
    const GridSet& g0 = base->gs;
    GridSet g = g0;
    g.shape = nullptr;
    parallel_for(0, g.ny, [&](int y0, int y1) {
        for (int iy = y0; iy < y1; ++iy)
            for (int ix = 0; ix < g.nx; ++ix)
                g.occ[g.idx(ix, iy)] = member(g.center(ix, iy), eps) ? 1 : 0;
    });
    return g;
}

FamilySpec FamilySpec::reparam(const std::function<double(double)>& f,
                               const std::string& tag) const {
    FamilySpec out = *this;
    out.kind = kind + tag;
    auto m = member;
    out.member = [m, f](const Vec2& z, double e) { return m(z, f(e)); };
    if (a_fiber) {
        auto fib = a_fiber;
        out.a_fiber = [fib, f](int i, const BundleSample& s, double e) { return fib(i, s, f(e)); };
    }
    return out;
}

FamilySpec constant_family(std::shared_ptr<Analysis> base) {
    FamilySpec fs;
    fs.kind = "constant";
    fs.base = base;
    ShapePtr shape = base->gs.shape;
    const GridSet* gs = &base->gs;
    fs.member = [shape, gs](const Vec2& z, double) {
        return shape ? shape->contains(z) : gs->contains_point(z);
    };
    fs.a_fiber = [](int, const BundleSample&, double) { return IntervalList{}; };
    return fs;
}

// ---------------------------------------------------------- parallel_family

namespace {

// Convex Minkowski sum as the hull of pairwise vertex sums; the vertex
// counts here are tiny, so the O(nm log nm) hull is the robust choice.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    if (pts.size() < 3) return pts;
    std::vector<Vec2> hull(2 * pts.size());
    size_t k = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && (hull[k - 1] - hull[k - 2]).cross(pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && (hull[k - 1] - hull[k - 2]).cross(pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

std::vector<Vec2> minkowski_convex(const std::vector<Vec2>& p, const std::vector<Vec2>& q) {
    std::vector<Vec2> sums;
    sums.reserve(p.size() * q.size());
    for (const auto& a : p)
        for (const auto& b : q) sums.push_back(a + b);
    return convex_hull(std::move(sums));
}

bool point_in_convex(const std::vector<Vec2>& poly, const Vec2& z) {
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i)
        if ((poly[(i + 1) % n] - poly[i]).cross(z - poly[i]) < 0) return false;
    return true;
}

std::vector<Vec2> scaled(const std::vector<Vec2>& v, double s) {
    std::vector<Vec2> out = v;
    for (auto& p : out) p = p * s;
    return out;
}

struct DilationCache {
    std::mutex mu;
    std::map<double, std::shared_ptr<GridSet>> grids;
};

}  // namespace

FamilySpec parallel_family(std::shared_ptr<Analysis> base, const ConvexBody& K) {
    if (!K.convex_ok()) fail(ErrorCode::NonConvex, "structuring body must be convex");
    FamilySpec fs;
    fs.kind = "parallel";
    fs.base = base;
    const GridSet& gs = base->gs;
    if (K.max_norm() * fs.eps_max > gs.margin / 2)
        fail(ErrorCode::MarginTooSmall, "eps_max * |K| exceeds half the margin");

    ShapePtr shape = gs.shape;
    auto disk = std::dynamic_pointer_cast<const DiskShape>(shape);
    auto poly = std::dynamic_pointer_cast<const PolygonShape>(shape);
    auto rect = std::dynamic_pointer_cast<const RectShape>(shape);

    if (K.is_point()) {
        Vec2 q = K.verts[0];
        fs.member = [shape, q](const Vec2& z, double e) { return shape->contains(z - q * e); };
        return fs;
    }
    if (disk) {
        Vec2 c = disk->center();
        double R = disk->radius();
        ConvexBody k = K;
        fs.member = [c, R, k](const Vec2& z, double e) {
            return e <= 0 ? dist(z, c) <= R : k.distance_scaled(z - c, e) <= R;
        };
        return fs;
    }
    if (K.is_ball() && shape) {
        double rho = K.ball_radius;
        fs.member = [shape, rho](const Vec2& z, double e) {
            return shape->signed_distance(z) <= e * rho;
        };
        return fs;
    }
    std::vector<Vec2> pverts;
    if (poly && poly->convex()) pverts = poly->vertices();
    if (rect)
        pverts = {rect->lo(), {rect->hi().x, rect->lo().y}, rect->hi(), {rect->lo().x, rect->hi().y}};
    if (!pverts.empty() && !K.verts.empty() && K.ball_radius == 0) {
        auto cache = std::make_shared<std::map<double, std::vector<Vec2>>>();
        auto mu = std::make_shared<std::mutex>();
        std::vector<Vec2> kv = K.verts;
        fs.member = [pverts, kv, cache, mu](const Vec2& z, double e) {
            if (e <= 0) return point_in_convex(pverts, z);
            std::vector<Vec2> sum;
            {
                std::lock_guard<std::mutex> lock(*mu);
                auto it = cache->find(e);
                if (it == cache->end())
                    it = cache->emplace(e, minkowski_convex(pverts, scaled(kv, e))).first;
                sum = it->second;
            }
            return point_in_convex(sum, z);
        };
        return fs;
    }

    // Raster dilation fallback: structuring element centered on the Steiner
    // point, applied per eps and cached.
    Vec2 q0 = K.steiner_point();
    auto cache = std::make_shared<DilationCache>();
    const GridSet* basegrid = &base->gs;
    ConvexBody k = K;
    fs.member = [basegrid, k, q0, cache](const Vec2& z, double e) {
        if (e <= 0) return basegrid->contains_point(z);
        std::shared_ptr<GridSet> dil;
        {
            std::lock_guard<std::mutex> lock(cache->mu);
            auto it = cache->grids.find(e);
            if (it == cache->grids.end()) {
                const GridSet& g0 = *basegrid;
                auto g = std::make_shared<GridSet>(g0);
                g->shape = nullptr;
                std::fill(g->occ.begin(), g->occ.end(), 0);
                // Offsets of e*(K - q0) at grid resolution.
                std::vector<std::pair<int, int>> offs;
                int rad = (int)std::ceil((k.max_norm() + q0.norm()) * e / g0.h) + 1;
                for (int dy = -rad; dy <= rad; ++dy)
                    for (int dx = -rad; dx <= rad; ++dx) {
                        Vec2 off{dx * g0.h, dy * g0.h};
                        if (k.distance_scaled(off + q0 * e, e) <= g0.h / 2) offs.emplace_back(dx, dy);
                    }
                Vec2 shift = q0 * e;
                int sx = (int)std::llround(shift.x / g0.h), sy = (int)std::llround(shift.y / g0.h);
                for (int iy = 0; iy < g0.ny; ++iy)
                    for (int ix = 0; ix < g0.nx; ++ix) {
                        if (!g0.occupied(ix, iy)) continue;
                        for (auto [dx, dy] : offs) {
                            int jx = ix + dx + sx, jy = iy + dy + sy;
                            if (g->in_range(jx, jy)) g->occ[g->idx(jx, jy)] = 1;
                        }
                    }
                it = cache->grids.emplace(e, std::move(g)).first;
            }
            dil = it->second;
        }
        return dil->contains_point(z);
    };
    return fs;
}

// ------------------------------------------------------ local parallel sets

FamilySpec local_parallel_family(std::shared_ptr<Analysis> base) {
    FamilySpec fs;
    fs.kind = "local_parallel";
    fs.base = base;
    const NormalBundle* nb = &base->nb;
    const DistanceFieldPair* df = &base->df;
    const BoundaryPolyline* bp = &base->bp;
    ShapePtr shape = base->gs.shape;
    const GridSet* gs = &base->gs;

    fs.a_fiber = [](int, const BundleSample& s, double eps) -> IntervalList {
        if (s.side != Side::outer) return {};
        double hgt = eps * std::min(s.r_plus, 1.0);
        return hgt > 0 ? IntervalList{{0, hgt}} : IntervalList{};
    };
    fs.member = [nb, df, bp, shape, gs](const Vec2& z, double eps) -> bool {
        bool in0 = shape ? shape->contains(z) : gs->contains_point(z);
        if (in0 || eps <= 0) return in0;
        auto pr = try_projection(*df, *bp, z, ProjSide::outer);
        if (!pr) return false;
        int i = nb->find_near(pr->p, Side::outer, 2 * gs->h);
        if (i < 0) return false;
        return pr->d <= eps * std::min(nb->samples[(size_t)i].r_plus, 1.0);
    };
    return fs;
}

FiberIntervalSet local_parallel_candidate(const NormalBundle& nb, double T) {
    return make_slab(nb, T, [](const BundleSample& s) -> std::optional<Interval> {
        if (s.side != Side::outer) return std::nullopt;
        return Interval{0, std::min(s.r_plus, 1.0)};
    });
}

// ----------------------------------------------------------------- subgraphs

FamilySpec subgraph_family(std::shared_ptr<Analysis> base,
                           std::function<double(const BundleSample&, double)> h_eps,
                           std::function<double(const BundleSample&)> g, double T_declared) {
    FamilySpec fs;
    fs.kind = "subgraph";
    fs.base = base;
    const NormalBundle* nb = &base->nb;

    // Declared bound: max over samples and a dyadic eps probe of h_eps/eps.
    for (double e = 1.0; e > 1e-3; e /= 2) {
        for (const auto& s : nb->samples) {
            if (s.side != Side::outer) continue;
            if (h_eps(s, e) / e > T_declared * (1 + 1e-9))
                fail(ErrorCode::ConditionBViolated,
                     "h_eps/eps exceeds the declared bound T=" + std::to_string(T_declared));
        }
    }

    fs.a_fiber = [h_eps](int, const BundleSample& s, double eps) -> IntervalList {
        if (s.side != Side::outer) return {};
        double hgt = std::min(h_eps(s, eps), s.r_plus);
        return hgt > 0 ? IntervalList{{0, hgt}} : IntervalList{};
    };
    const DistanceFieldPair* df = &base->df;
    const BoundaryPolyline* bp = &base->bp;
    ShapePtr shape = base->gs.shape;
    const GridSet* gs = &base->gs;
    fs.member = [nb, df, bp, shape, gs, h_eps](const Vec2& z, double eps) -> bool {
        bool in0 = shape ? shape->contains(z) : gs->contains_point(z);
        if (in0 || eps <= 0) return in0;
        auto pr = try_projection(*df, *bp, z, ProjSide::outer);
        if (!pr) return false;
        int i = nb->find_near(pr->p, Side::outer, 2 * gs->h);
        if (i < 0) return false;
        const BundleSample& s = nb->samples[(size_t)i];
        return pr->d <= std::min(h_eps(s, eps), s.r_plus);
    };
    (void)g;
    return fs;
}

FiberIntervalSet subgraph_candidate(const NormalBundle& nb,
                                    const std::function<double(const BundleSample&)>& g,
                                    double T) {
    return make_slab(nb, T, [&](const BundleSample& s) -> std::optional<Interval> {
        if (s.side != Side::outer) return std::nullopt;
        double hgt = g(s);
        if (hgt <= 0) return std::nullopt;
        return Interval{0, hgt};
    });
}

FiberIntervalSet support_subgraph(const NormalBundle& nb, const ConvexBody& K, double T) {
    return make_slab(nb, T, [&](const BundleSample& s) -> std::optional<Interval> {
        double hk = K.support(s.u);
        if (s.side == Side::outer && hk > 0) return Interval{0, hk};
        if (s.side == Side::inner && hk < 0) return Interval{hk, 0};
        return std::nullopt;
    });
}

// ----------------------------------------------------------------------- comb

std::vector<double> dyadic_sequence(int count) {
    std::vector<double> a((size_t)count);
    for (int k = 1; k <= count; ++k) a[(size_t)k - 1] = std::pow(2.0, -k);
    return a;
}

CombInstance make_comb(const std::vector<double>& a, int K, double h) {
    if (K < 3) fail(ErrorCode::Other, "comb needs at least 3 teeth");
    if ((int)a.size() < K + 1) fail(ErrorCode::Other, "comb needs K+1 sequence values");
    for (int k = 0; k + 1 < K + 1; ++k)
        if (!(a[(size_t)k] > a[(size_t)k + 1] && a[(size_t)k + 1] > 0))
            fail(ErrorCode::Other, "comb sequence must be strictly decreasing and positive");

    CombInstance ci;
    ci.a.assign(a.begin(), a.begin() + K + 1);
    ci.teeth = K;
    ci.wall_width = ci.a[(size_t)K] / 2;  // total width of the merged tail

    std::vector<ShapePtr> parts;
    for (int k = 1; k <= K; ++k) {
        double bk = ci.b(k), ak = ci.a[(size_t)k - 1];
        if (ak - bk < 4 * h)
            fail(ErrorCode::ResolutionTooCoarse,
                 "tooth " + std::to_string(k) + " narrower than 4h");
        if (k < K && ci.a[(size_t)k] < 4 * h)
            fail(ErrorCode::ResolutionTooCoarse, "slot below tooth " + std::to_string(k));
        parts.push_back(make_rect({bk, 0}, {ak, 1}));
    }
    double bK = ci.b(K);
    if (bK - ci.wall_width < 4 * h)
        fail(ErrorCode::ResolutionTooCoarse, "slot against the limit wall narrower than 4h");
    parts.push_back(make_rect({0, 0}, {ci.wall_width, 1}));
    ci.f1 = make_union(parts);
    ci.f2 = make_rect({-1, 0}, {0, 1});
    ci.f = make_union({ci.f1, ci.f2});

    // Merged teeth the grid could still have resolved (width >= 4h), assuming
    // the supplied rule continues to halve; reported as a diagnostic.
    double w = (ci.a[(size_t)K - 1] - ci.a[(size_t)K]) / 2;
    int merged = 0;
    while (w / 2 >= 4 * h && merged < 64) {
        w /= 2;
        ++merged;
    }
    ci.merged_resolvable = merged;

    ShapePtr f1 = ci.f1;
    ci.member_f = [f1](const Vec2& z, double eps) {
        if (z.y >= 0 && z.y <= 1 && z.x >= -1 && z.x <= eps) return true;
        return f1->contains(z);
    };
    return ci;
}

FamilySpec CombInstance::family(std::shared_ptr<Analysis> base) const {
    FamilySpec fs;
    fs.kind = "comb";
    fs.base = base;
    fs.member = member_f;
    return fs;
}

// ---------------------------------------------------------------------- split

SplitInstance make_split(bool identity_rule) {
    SplitInstance si;
    si.identity = identity_rule;
    si.f1 = make_rect({0, 0}, {1, 1});
    si.f2 = make_rect({-1, 0}, {0, 1});
    si.f = make_rect({-1, 0}, {1, 1});
    std::vector<CurveSegment> segs = {
        {{-1, 0}, {1, 0}}, {{1, 0}, {1, 1}}, {{1, 1}, {-1, 1}}, {{-1, 1}, {-1, 0}},
        {{0, 0}, {0, 1}},  // the crack
    };
    si.c_curve = make_polyline(segs);
    bool ident = identity_rule;
    ShapePtr f1 = si.f1;
    si.member_f = [f1, ident](const Vec2& z, double eps) {
        double sh = ident ? 0.0 : eps;
        if (z.y >= 0 && z.y <= 1 && z.x >= -1 - sh && z.x <= -sh) return true;
        return f1->contains(z);
    };
    return si;
}

FiberIntervalSet SplitInstance::predicted(const NormalBundle& nb_c, double T) const {
    bool ident = identity;
    return make_slab(nb_c, T, [ident](const BundleSample& s) -> std::optional<Interval> {
        if (ident) return std::nullopt;
        const Vec2 qhat{-1, 0};  // unit translation per eps
        double tol = 1e-6;
        double hgt = 0;
        if (s.x.x < -tol) {
            hgt = std::max(0.0, qhat.dot(s.u));
        } else if (std::abs(s.x.x) <= tol) {
            // Crack fibers pointing into the vacated side.
            if (s.u.x < -0.5) hgt = qhat.dot(s.u);
        }
        if (hgt <= 1e-12) return std::nullopt;
        return Interval{0, hgt};
    });
}

FamilySpec SplitInstance::family(std::shared_ptr<Analysis> base_c) const {
    FamilySpec fs;
    fs.kind = identity ? "split-identity" : "split-translate";
    fs.base = base_c;
    fs.member = member_f;
    return fs;
}

DecompositionReport normal_decomposition_check(const ShapePtr& f1, const ShapePtr& f2,
                                               const ShapePtr& f,
                                               const std::vector<double>& epsilons, double h) {
    DecompositionReport rep;
    rep.epsilons = epsilons;
    double margin = 4 * h + 2 * epsilons.front();
    BBox box = f->bbox().padded(margin);

    auto b1 = make_boundary_of(f1);
    auto b2 = make_boundary_of(f2);
    auto bf = make_boundary_of(f);
    GridSet g1 = build_grid_set_on(b1, h, margin, box);
    GridSet g2 = build_grid_set_on(b2, h, margin, box);
    GridSet gf = build_grid_set_on(bf, h, margin, box);
    DistanceField d1 = distance_field(g1, g1.occ);
    DistanceField d2 = distance_field(g2, g2.occ);
    DistanceField dff = distance_field(gf, gf.occ);

    // dF1 ∩ dF2 and dF1 triangle dF2 at grid scale.
    GridSet gcap = g1;
    GridSet gsym = g1;
    bool cap_any = false, sym_any = false;
    for (size_t i = 0; i < g1.occ.size(); ++i) {
        gcap.occ[i] = g1.occ[i] && g2.occ[i];
        gsym.occ[i] = g1.occ[i] != g2.occ[i];
        cap_any |= gcap.occ[i] != 0;
        sym_any |= gsym.occ[i] != 0;
    }
    std::vector<uint32_t> dcap_d2, dsym_d2;
    if (cap_any) dcap_d2 = distance_field(gcap, gcap.occ).d2;
    if (sym_any) dsym_d2 = distance_field(gsym, gsym.occ).d2;

    const double h2 = h * h;
    for (double eps : epsilons) {
        double cells = eps / h;
        double c2 = cells * cells;
        size_t joint = 0, symcap = 0, capminus = 0;
        for (int iy = 0; iy < g1.ny; ++iy)
            for (int ix = 0; ix < g1.nx; ++ix) {
                size_t id = g1.idx(ix, iy);
                bool in1 = d1.d2[id] <= c2;
                bool in2 = d2.d2[id] <= c2;
                if (!(in1 && in2)) continue;
                bool inf_ = dff.d2[id] <= c2;
                bool incap = cap_any && dcap_d2[id] <= c2;
                bool insym = sym_any && dsym_d2[id] <= c2;
                if (inf_) ++joint;
                if (insym && incap) ++symcap;
                if (!incap) ++capminus;
            }
        rep.joint.push_back(joint * h2 / eps);
        rep.sym_cap.push_back(symcap * h2 / eps);
        rep.cap_minus.push_back(capminus * h2 / eps);
    }

    rep.pass = true;
    for (size_t i = 0; i + 1 < rep.joint.size(); ++i)
        if (rep.joint[i + 1] > 0.75 * rep.joint[i] + 1e-12) rep.pass = false;
    if (!rep.joint.empty() && rep.joint.back() > rep.joint.front() / 4 + 1e-12) rep.pass = false;
    return rep;
}

}  // namespace setderiv
