#include "setderiv/steiner.hpp"

#include <cmath>

#include "setderiv/errors.hpp"
#include "setderiv/parallel.hpp"

namespace setderiv {

PolygonMeasures polygon_support_measures(const std::vector<Vec2>& ccw) {
    PolygonShape shape(ccw);
    if (!shape.convex()) fail(ErrorCode::NonConvex, "support measures need a convex polygon");
    const auto& v = shape.vertices();
    PolygonMeasures pm;
    pm.polygon = v;
    size_t n = v.size();
    for (size_t i = 0; i < n; ++i) {
        Vec2 e_prev = v[i] - v[(i + n - 1) % n];
        Vec2 e_next = v[(i + 1) % n] - v[i];
        pm.theta1.push_back(e_next.norm());
        // Exterior (turning) angle at the vertex.
        double turn = std::atan2(e_prev.cross(e_next), e_prev.dot(e_next));
        pm.theta0.push_back(turn);
        pm.total1 += e_next.norm();
        pm.total0 += turn;
    }
    return pm;
}

double offset_area_closed_form(const PolygonMeasures& pm, double t) {
    return t * pm.total1 + 0.5 * t * t * pm.total0;
}

double polygon_inner_reach(const PolygonShape& poly, const Vec2& x, const Vec2& inward,
                           double cap) {
    // sup of s with the nearest outline point of x + s*inward still x.
    auto holds = [&](double s) {
        Vec2 z = x + inward * s;
        return std::abs(poly.boundary_distance(z) - s) <= 1e-12 + 1e-9 * s;
    };
    if (!holds(1e-9)) return 0;
    if (holds(cap)) return cap;
    double lo = 1e-9, hi = cap;
    for (int i = 0; i < 60 && hi - lo > 1e-14; ++i) {
        double mid = 0.5 * (lo + hi);
        (holds(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

double grid_quadrature_complement(const PolygonShape& poly,
                                  const std::function<double(const Vec2&)>& f, double t_max,
                                  bool two_sided, double h) {
    BBox box = poly.bbox().padded(t_max + 4 * h);
    double x0 = std::floor(box.lo.x / h) * h;
    double y0 = std::floor(box.lo.y / h) * h;
    int nx = (int)std::ceil((box.hi.x - x0) / h);
    int ny = (int)std::ceil((box.hi.y - y0) / h);
    std::vector<double> partial((size_t)ny, 0.0);
    parallel_for(0, ny, [&](int b, int e) {
        for (int iy = b; iy < e; ++iy) {
            double acc = 0;
            for (int ix = 0; ix < nx; ++ix) {
                Vec2 z{x0 + (ix + 0.5) * h, y0 + (iy + 0.5) * h};
                bool inside = poly.contains(z);
                if (inside && !two_sided) continue;
                acc += f(z);
            }
            partial[(size_t)iy] = acc;
        }
    });
    double s = 0;
    for (double p : partial) s += p;
    return s * h * h;
}

}  // namespace

SteinerCheck steiner_check_polygon(const std::vector<Vec2>& verts,
                                   const std::function<double(const Vec2&)>& f, double t_max,
                                   bool two_sided, double grid_h, double quad_step) {
    PolygonShape poly(verts);
    if (!poly.convex()) fail(ErrorCode::NonConvex, "polygon path requires convexity");
    const auto& v = poly.vertices();
    size_t n = v.size();

    SteinerCheck out;
    out.lhs = grid_quadrature_complement(poly, f, t_max, two_sided, grid_h);

    double rhs = 0;
    // Edge strips (outer; reach is infinite for a convex set).
    for (size_t i = 0; i < n; ++i) {
        const Vec2& a = v[i];
        const Vec2& b = v[(i + 1) % n];
        double len = dist(a, b);
        Vec2 dir = (b - a) / len;
        Vec2 nrm{dir.y, -dir.x};  // outward for ccw
        int nl = std::max(2, (int)std::ceil(len / quad_step));
        int nt = std::max(2, (int)std::ceil(t_max / quad_step));
        double dl = len / nl, dt = t_max / nt;
        for (int il = 0; il < nl; ++il) {
            Vec2 x = a + dir * ((il + 0.5) * dl);
            double inner_cap = 0;
            if (two_sided)
                inner_cap = std::min(t_max, polygon_inner_reach(poly, x, -nrm, t_max));
            for (int it = 0; it < nt; ++it) {
                double t = (it + 0.5) * dt;
                rhs += f(x + nrm * t) * dl * dt;
                if (two_sided && t < inner_cap) rhs += f(x - nrm * t) * dl * dt;
            }
        }
    }
    // Vertex cones with exact radial weight (outer side only; inward corners
    // of a convex set receive no projections).
    for (size_t i = 0; i < n; ++i) {
        Vec2 e_prev = v[i] - v[(i + n - 1) % n];
        Vec2 e_next = v[(i + 1) % n] - v[i];
        Vec2 n0 = Vec2{e_prev.y, -e_prev.x}.normalized();
        double a0 = std::atan2(n0.y, n0.x);
        double turn = std::atan2(e_prev.cross(e_next), e_prev.dot(e_next));
        if (turn <= 0) continue;
        int na = std::max(2, (int)std::ceil(turn / (quad_step * 4)));
        int nt = std::max(2, (int)std::ceil(t_max / quad_step));
        double da = turn / na, dt = t_max / nt;
        for (int ia = 0; ia < na; ++ia) {
            double ang = a0 + (ia + 0.5) * da;
            Vec2 u{std::cos(ang), std::sin(ang)};
            for (int it = 0; it < nt; ++it) {
                double t = (it + 0.5) * dt;
                rhs += f(v[i] + u * t) * t * da * dt;
            }
        }
    }
    out.rhs = rhs;
    out.rel_err = std::abs(out.lhs - out.rhs) / std::max(1e-300, std::abs(out.rhs));
    return out;
}

SteinerCheck steiner_check_grid(const Analysis& a, const std::function<double(const Vec2&)>& f,
                                double t_max, bool two_sided, bool full_order) {
    if (full_order)
        fail(ErrorCode::UnsupportedSet, "full-order expansion unavailable for raster sets");
    const GridSet& gs = a.gs;
    SteinerCheck out;

    double lhs = 0;
    for (int iy = 0; iy < gs.ny; ++iy)
        for (int ix = 0; ix < gs.nx; ++ix) {
            bool inside = gs.occupied(ix, iy);
            if (inside && !two_sided) continue;
            lhs += f(gs.center(ix, iy));
        }
    out.lhs = lhs * gs.h * gs.h;

    const double step = gs.h / 2;
    double rhs = 0;
    for (const auto& s : a.nb.samples) {
        double cap = std::min(t_max, s.reach_on_side());
        int nt = (int)std::floor(cap / step);
        Vec2 dir = s.side == Side::inner ? -s.u : s.u;
        double acc = 0;
        for (int it = 0; it < nt; ++it) acc += f(s.x + dir * ((it + 0.5) * step));
        rhs += s.weight * acc * step;
    }
    out.rhs = rhs;
    out.rel_err = std::abs(out.lhs - out.rhs) / std::max(1e-300, std::abs(out.rhs));
    return out;
}

// ----------------------------------------------------------------- densities

DensitySpec DensitySpec::lebesgue() {
    DensitySpec d;
    d.name = "lebesgue";
    d.f = [](const Vec2&) { return 1.0; };
    return d;
}

DensitySpec DensitySpec::uniform(double value) {
    DensitySpec d;
    d.name = "uniform";
    d.f = [value](const Vec2&) { return value; };
    return d;
}

DensitySpec DensitySpec::gaussian(double sigma) {
    DensitySpec d;
    d.name = "gaussian";
    double s2 = sigma * sigma;
    double norm = 1.0 / (2 * M_PI * s2);
    d.f = [s2, norm](const Vec2& z) { return norm * std::exp(-z.norm2() / (2 * s2)); };
    return d;
}

std::pair<double, double> density_residual(const Analysis& a, const DensitySpec& ds, double eps) {
    const GridSet& gs = a.gs;
    double rp = 0, rm = 0;
    for (int iy = 0; iy < gs.ny; ++iy)
        for (int ix = 0; ix < gs.nx; ++ix) {
            Vec2 z = gs.center(ix, iy);
            bool inside = gs.occupied(ix, iy);
            if (!inside) {
                double d = a.df.outer.dist(ix, iy);
                if (d <= 0 || d > eps) continue;
                auto pr = try_projection(a.df, a.bp, z, ProjSide::outer);
                if (pr) rp += std::abs(ds.f(z) - ds.boundary_plus(pr->p));
            } else if (a.df.has_inner) {
                double d = a.df.inner.dist(ix, iy);
                if (d <= 0 || d > eps) continue;
                auto pr = try_projection(a.df, a.bp, z, ProjSide::inner);
                if (pr) rm += std::abs(ds.f(z) - ds.boundary_minus(pr->p));
            }
        }
    double scale = gs.h * gs.h / eps;
    return {rp * scale, rm * scale};
}

double q_measure(const FiberIntervalSet& B, const DensitySpec& ds, const NormalBundle& nb) {
    if (B.bundle_id != nb.id) fail(ErrorCode::BundleMismatch, "Q over a different bundle");
    double q = 0;
    for (size_t i = 0; i < B.fibers.size(); ++i) {
        const BundleSample& s = nb.samples[i];
        double len = intervals_length(B.fibers[i]);
        if (len <= 0) continue;
        double fb = s.side == Side::outer ? ds.boundary_plus(s.x) : ds.boundary_minus(s.x);
        q += s.weight * fb * len;
    }
    return q;
}

namespace {

MeasureDerivativeReport mdc_impl(const FamilySpec& family,
                                 const DensitySpec& ds, const std::vector<double>& epsilons,
                                 double tol, bool check_density,
                                 const std::function<bool(const Vec2&)>& point_filter,
                                 double qb_value) {
    const Analysis& a = *family.base;
    const GridSet& gs = a.gs;
    MeasureDerivativeReport rep;
    rep.epsilons = epsilons;
    rep.qb = qb_value;

    for (double eps : epsilons) {
        std::vector<double> partial((size_t)gs.ny, 0.0);
        parallel_for(0, gs.ny, [&](int b, int e) {
            for (int iy = b; iy < e; ++iy) {
                double acc = 0;
                for (int ix = 0; ix < gs.nx; ++ix) {
                    Vec2 z = gs.center(ix, iy);
                    if (!family.member_A(z, eps)) continue;
                    if (point_filter && !point_filter(z)) continue;
                    acc += ds.f(z);
                }
                partial[(size_t)iy] = acc;
            }
        });
        double P = 0;
        for (double p : partial) P += p;
        P *= gs.h * gs.h;
        rep.ratio.push_back(P / eps);
        rep.err.push_back(std::abs(P / eps - rep.qb));
        if (check_density) {
            auto [rp, rm] = density_residual(a, ds, eps);
            rep.residual_plus.push_back(rp);
            rep.residual_minus.push_back(rm);
        }
    }

    if (check_density && rep.residual_plus.size() >= 2) {
        if (rep.residual_plus.back() > rep.residual_plus.front() + 1e-12 ||
            rep.residual_minus.back() > rep.residual_minus.front() + 1e-12)
            fail(ErrorCode::DensityConditionFails,
                 "boundary-density residuals do not decrease along the schedule");
    }

    bool dec = true;
    for (size_t i = 0; i + 1 < rep.err.size(); ++i)
        if (rep.err[i + 1] > rep.err[i] * 1.1 + 1e-12) dec = false;
    rep.pass = dec && !rep.err.empty() && rep.err.back() < tol;
    return rep;
}

}  // namespace

MeasureDerivativeReport measure_derivative_check(const FamilySpec& family,
                                                 const FiberIntervalSet& B, const DensitySpec& ds,
                                                 const std::vector<double>& epsilons, double tol,
                                                 bool check_density_condition) {
    double qb = q_measure(B, ds, family.base->nb);
    return mdc_impl(family, ds, epsilons, tol, check_density_condition, nullptr, qb);
}

MeasureDerivativeReport measure_derivative_check_restricted(const FamilySpec& family,
                                                            const FiberIntervalSet& B,
                                                            const DensitySpec& ds,
                                                            const std::vector<double>& epsilons,
                                                            double c, double tol) {
    const Analysis& a = *family.base;
    const NormalBundle& nb = a.nb;

    // Q over the restricted fibers only.
    double qb = 0;
    for (size_t i = 0; i < B.fibers.size(); ++i) {
        const BundleSample& s = nb.samples[i];
        if (!(s.min_reach() > c)) continue;
        double len = intervals_length(B.fibers[i]);
        double fb = s.side == Side::outer ? ds.boundary_plus(s.x) : ds.boundary_minus(s.x);
        qb += s.weight * fb * len;
    }

    const DistanceFieldPair* df = &a.df;
    const BoundaryPolyline* bp = &a.bp;
    const NormalBundle* nbp = &nb;
    const GridSet* gs = &a.gs;
    auto filter = [df, bp, nbp, gs, c](const Vec2& z) {
        int ix, iy;
        gs->cell_of(z, ix, iy);
        bool inside = gs->occupied(ix, iy);
        auto pr = try_projection(*df, *bp, z, inside ? ProjSide::inner : ProjSide::outer);
        if (!pr) return false;
        int i = nbp->find_near(pr->p, inside ? Side::inner : Side::outer, 2 * gs->h);
        if (i < 0) return false;
        return nbp->samples[(size_t)i].min_reach() > c;
    };
    return mdc_impl(family, ds, epsilons, tol, false, filter, qb);
}

}  // namespace setderiv
