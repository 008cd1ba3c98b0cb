#include "setderiv/bundle.hpp"

#include <atomic>
#include <cmath>
#include <sstream>

#include "setderiv/errors.hpp"
#include "setderiv/io.hpp"
#include "setderiv/parallel.hpp"

namespace setderiv {

double NormalBundle::outer_weight() const {
    double w = 0;
    for (const auto& s : samples)
        if (s.side == Side::outer) w += s.weight;
    return w;
}

double NormalBundle::inner_weight() const {
    double w = 0;
    for (const auto& s : samples)
        if (s.side == Side::inner) w += s.weight;
    return w;
}

void NormalBundle::build_index(const GridSet& gs) {
    nx_ = gs.nx;
    h_ = gs.h;
    origin_ = gs.bbox.lo;
    buckets_.clear();
    for (int i = 0; i < (int)samples.size(); ++i) {
        int ix = (int)std::floor((samples[i].x.x - origin_.x) / h_);
        int iy = (int)std::floor((samples[i].x.y - origin_.y) / h_);
        buckets_[(int64_t)iy * nx_ + ix].push_back(i);
    }
}

int NormalBundle::find_near(const Vec2& p, Side side, double radius) const {
    int cx = (int)std::floor((p.x - origin_.x) / h_);
    int cy = (int)std::floor((p.y - origin_.y) / h_);
    int r = (int)std::ceil(radius / h_);
    int best = -1;
    double bestd = radius;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx) {
            auto it = buckets_.find((int64_t)(cy + dy) * nx_ + (cx + dx));
            if (it == buckets_.end()) continue;
            for (int i : it->second) {
                if (samples[i].side != side) continue;
                double d = dist(samples[i].x, p);
                if (d < bestd) {
                    bestd = d;
                    best = i;
                }
            }
        }
    return best;
}

double reach(const DistanceFieldPair& df, const BoundaryPolyline& bp, const Vec2& x, const Vec2& u,
             ProjSide side, double r_max) {
    const GridSet& gs = *df.source;
    const double h = gs.h;
    Vec2 dir = side == ProjSide::inner ? -u : u;

    auto holds = [&](double s) -> bool {
        Vec2 z = x + dir * s;
        if (!gs.in_domain(z)) return false;
        auto pr = try_projection(df, bp, z, side);
        if (!pr) return false;
        return dist(pr->p, x) <= 2 * h && std::abs(pr->d - s) <= 2 * h;
    };

    if (!holds(h)) fail(ErrorCode::InvalidDirection, "reach predicate fails one cell out");
    if (holds(r_max)) return kInf;
    double lo = h, hi = r_max;
    while (hi - lo > h / 2) {
        double mid = 0.5 * (lo + hi);
        (holds(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

std::atomic<uint64_t> g_bundle_ids{1};

struct ProbeResult {
    bool ok = false;
    Vec2 u;
};

// Walk probes outward (h, 2h, 4h, 8h), re-projecting each time. The first
// step is the acceptance test; the later steps only sharpen the normal, since
// the projection direction at distance s carries the polyline jitter divided
// by s. Stops as soon as a probe escapes the sample's basin.
ProbeResult probe_direction(const GridSet& gs, const DistanceFieldPair& df,
                            const BoundaryPolyline& bp, const Vec2& x, const Vec2& n,
                            ProjSide side) {
    const double h = gs.h;
    Vec2 dir = side == ProjSide::inner ? -n : n;
    Vec2 z = x + dir * h;
    if (!gs.in_domain(z)) return {};
    auto pr = try_projection(df, bp, z, side);
    if (!pr || dist(pr->p, x) > 2 * h || pr->d > 2 * h) return {};
    Vec2 u = pr->u;  // outward by convention

    for (double s : {2 * h, 4 * h, 8 * h}) {
        Vec2 step = (side == ProjSide::inner ? -u : u) * s;
        Vec2 z2 = x + step;
        if (!gs.in_domain(z2)) break;
        auto pr2 = try_projection(df, bp, z2, side);
        if (!pr2 || dist(pr2->p, x) > 2 * h || std::abs(pr2->d - s) > 2 * h) break;
        u = pr2->u;
    }
    return {true, u};
}

}  // namespace

NormalBundle sample_bundle(const GridSet& gs, const DistanceFieldPair& df,
                           const BoundaryPolyline& bp) {
    NormalBundle nb;
    nb.mode = gs.mode;
    nb.source = &gs;
    nb.id = g_bundle_ids.fetch_add(1);
    const double r_max = gs.margin / 2;
    const int nseg = (int)bp.segments.size();

    struct Slot {
        bool has[2] = {false, false};
        BundleSample s[2];
        double rejected[2] = {0, 0};
    };
    std::vector<Slot> slots(nseg);

    parallel_for(0, nseg, [&](int b, int e) {
        for (int i = b; i < e; ++i) {
            const auto& seg = bp.segments[i];
            Slot& slot = slots[i];

            if (gs.mode == GridMode::solid) {
                auto out = probe_direction(gs, df, bp, seg.midpoint, seg.normal, ProjSide::outer);
                if (out.ok) {
                    BundleSample s;
                    s.x = seg.midpoint;
                    s.u = out.u;
                    s.side = Side::outer;
                    s.weight = seg.length;
                    try {
                        s.r_plus = reach(df, bp, s.x, s.u, ProjSide::outer, r_max);
                        s.r_minus = df.has_inner ? [&] {
                            try {
                                return reach(df, bp, s.x, s.u, ProjSide::inner, r_max);
                            } catch (const Error&) {
                                return 0.0;
                            }
                        }() : kInf;
                        slot.has[0] = true;
                        slot.s[0] = s;
                    } catch (const Error&) {
                        slot.rejected[0] = seg.length;
                    }
                } else {
                    slot.rejected[0] = seg.length;
                }
                auto in = probe_direction(gs, df, bp, seg.midpoint, seg.normal, ProjSide::inner);
                if (in.ok) {
                    BundleSample s;
                    s.x = seg.midpoint;
                    s.u = in.u;
                    s.side = Side::inner;
                    s.weight = seg.length;
                    try {
                        s.r_minus = reach(df, bp, s.x, s.u, ProjSide::inner, r_max);
                        s.r_plus = [&] {
                            try {
                                return reach(df, bp, s.x, s.u, ProjSide::outer, r_max);
                            } catch (const Error&) {
                                return 0.0;
                            }
                        }();
                        slot.has[1] = true;
                        slot.s[1] = s;
                    } catch (const Error&) {
                        slot.rejected[1] = seg.length;
                    }
                } else {
                    slot.rejected[1] = seg.length;
                }
            } else {
                // Boundary mode: both directions are one-sided fibers, each
                // carrying the full segment length.
                for (int k = 0; k < 2; ++k) {
                    Vec2 n = k == 0 ? seg.normal : -seg.normal;
                    auto res = probe_direction(gs, df, bp, seg.midpoint, n, ProjSide::outer);
                    if (!res.ok) {
                        slot.rejected[k] = seg.length;
                        continue;
                    }
                    BundleSample s;
                    s.x = seg.midpoint;
                    s.u = res.u;
                    s.side = Side::outer;
                    s.weight = seg.length;
                    s.r_minus = kInf;
                    try {
                        s.r_plus = reach(df, bp, s.x, s.u, ProjSide::outer, r_max);
                        slot.has[k] = true;
                        slot.s[k] = s;
                    } catch (const Error&) {
                        slot.rejected[k] = seg.length;
                    }
                }
            }
        }
    });

    for (const auto& slot : slots) {
        for (int k = 0; k < 2; ++k) {
            if (slot.has[k]) {
                nb.samples.push_back(slot.s[k]);
                nb.total_weight += slot.s[k].weight;
            }
        }
        nb.rejected_length_outer += slot.rejected[0];
        nb.rejected_length_inner += slot.rejected[1];
    }
    if (nb.samples.empty()) fail(ErrorCode::EmptyBundle, "no bundle sample accepted");
    nb.build_index(gs);
    return nb;
}

NormalBundle restrict_bundle(const NormalBundle& nb, double c) {
    if (c <= 0) fail(ErrorCode::Other, "restriction level must be positive");
    NormalBundle out;
    out.mode = nb.mode;
    out.source = nb.source;
    out.id = g_bundle_ids.fetch_add(1);
    for (const auto& s : nb.samples) {
        if (s.min_reach() > c) {
            out.samples.push_back(s);
            out.total_weight += s.weight;
        }
    }
    if (nb.source) out.build_index(*nb.source);
    return out;
}

std::string bundle_to_csv(const NormalBundle& nb) {
    std::ostringstream os;
    os << "x0,x1,u0,u1,side,r_plus,r_minus,weight,regular\n";
    for (const auto& s : nb.samples) {
        os << format_double(s.x.x) << ',' << format_double(s.x.y) << ',' << format_double(s.u.x)
           << ',' << format_double(s.u.y) << ',' << (s.side == Side::outer ? "outer" : "inner")
           << ',' << format_double(s.r_plus) << ',' << format_double(s.r_minus) << ','
           << format_double(s.weight) << ',' << (s.regular ? 1 : 0) << '\n';
    }
    return os.str();
}

std::shared_ptr<Analysis> analyze(const ShapePtr& shape, double h, double margin) {
    auto a = std::make_shared<Analysis>();
    a->gs = build_grid_set(shape, h, margin);
    a->df = distance_transform(a->gs);
    a->df.source = &a->gs;
    a->bp = extract_boundary(a->gs);
    a->nb = sample_bundle(a->gs, a->df, a->bp);
    return a;
}

}  // namespace setderiv
