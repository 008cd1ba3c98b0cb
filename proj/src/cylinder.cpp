#include "setderiv/cylinder.hpp"

#include <cmath>
#include <sstream>

#include "setderiv/errors.hpp"
#include "setderiv/io.hpp"
#include "setderiv/parallel.hpp"

namespace setderiv {

FiberIntervalSet FiberIntervalSet::empty_on(const NormalBundle& nb, double T) {
    FiberIntervalSet f;
    f.bundle_id = nb.id;
    f.bundle = &nb;
    f.bound = T;
    f.fibers.assign(nb.samples.size(), {});
    return f;
}

namespace {

void check_same(const FiberIntervalSet& a, const FiberIntervalSet& b) {
    if (a.bundle_id != b.bundle_id || a.fibers.size() != b.fibers.size())
        fail(ErrorCode::BundleMismatch, "fiber sets live on different bundles");
}

template <typename Op>
FiberIntervalSet zip(const FiberIntervalSet& a, const FiberIntervalSet& b, Op op) {
    check_same(a, b);
    FiberIntervalSet out = a;
    out.bound = std::max(a.bound, b.bound);
    for (size_t i = 0; i < a.fibers.size(); ++i) out.fibers[i] = op(a.fibers[i], b.fibers[i]);
    return out;
}

}  // namespace

FiberIntervalSet fis_union(const FiberIntervalSet& a, const FiberIntervalSet& b) {
    return zip(a, b, intervals_union);
}
FiberIntervalSet fis_intersect(const FiberIntervalSet& a, const FiberIntervalSet& b) {
    return zip(a, b, intervals_intersect);
}
FiberIntervalSet fis_subtract(const FiberIntervalSet& a, const FiberIntervalSet& b) {
    return zip(a, b, intervals_subtract);
}

FiberIntervalSet fis_scale(const FiberIntervalSet& a, double factor) {
    FiberIntervalSet out = a;
    out.bound = a.bound * std::abs(factor);
    for (auto& f : out.fibers) {
        for (auto& i : f) {
            i.lo *= factor;
            i.hi *= factor;
            if (i.lo > i.hi) std::swap(i.lo, i.hi);
        }
        f = normalize_intervals(std::move(f));
    }
    return out;
}

FiberIntervalSet make_slab(
    const NormalBundle& nb, double T,
    const std::function<std::optional<Interval>(const BundleSample&)>& range) {
    FiberIntervalSet out = FiberIntervalSet::empty_on(nb, T);
    for (size_t i = 0; i < nb.samples.size(); ++i) {
        auto r = range(nb.samples[i]);
        if (!r) continue;
        auto clipped = intervals_clip({*r}, -T, T);
        out.fibers[i] = normalize_intervals(std::move(clipped));
    }
    return out;
}

double m_measure(const FiberIntervalSet& fis) {
    double m = 0;
    for (size_t i = 0; i < fis.fibers.size(); ++i)
        m += fis.bundle->samples[i].weight * intervals_length(fis.fibers[i]);
    return m;
}

double sym_diff_measure(const FiberIntervalSet& p, const FiberIntervalSet& q) {
    check_same(p, q);
    double m = 0;
    for (size_t i = 0; i < p.fibers.size(); ++i)
        m += p.bundle->samples[i].weight * intervals_symdiff_length(p.fibers[i], q.fibers[i]);
    return m;
}

double sym_diff_measure_masked(const FiberIntervalSet& p, const FiberIntervalSet& q,
                               const std::vector<uint8_t>& mask) {
    check_same(p, q);
    double m = 0;
    for (size_t i = 0; i < p.fibers.size(); ++i)
        if (mask[i])
            m += p.bundle->samples[i].weight * intervals_symdiff_length(p.fibers[i], q.fibers[i]);
    return m;
}

std::string fis_to_csv(const FiberIntervalSet& fis) {
    std::ostringstream os;
    os << "sample_index,t0,t1\n";
    for (size_t i = 0; i < fis.fibers.size(); ++i)
        for (const auto& iv : fis.fibers[i])
            os << i << ',' << format_double(iv.lo) << ',' << format_double(iv.hi) << '\n';
    return os.str();
}

// --------------------------------------------------------------- magnification

MagnifiedPoint magnify_point(const DistanceFieldPair& df, const BoundaryPolyline& bp,
                             const Vec2& z, double eps) {
    const GridSet& gs = *df.source;
    MagnifiedPoint out;
    if (!gs.in_domain(z)) {
        out.status = MagnifyStatus::out_of_domain;
        return out;
    }
    int ix, iy;
    gs.cell_of(z, ix, iy);
    bool inside = gs.mode == GridMode::solid && gs.occupied(ix, iy);
    ProjSide side = inside ? ProjSide::inner : ProjSide::outer;
    if (inside && !df.has_inner) {
        out.status = MagnifyStatus::on_boundary;
        return out;
    }
    auto pr = try_projection(df, bp, z, side);
    if (!pr || pr->d < gs.h / 4) {
        out.status = MagnifyStatus::on_boundary;
        return out;
    }
    if (pr->on_skeleton) {
        out.status = MagnifyStatus::skeleton;
        return out;
    }
    out.t = (inside ? -1 : 1) * pr->d / eps;
    out.x = pr->p;
    out.u = pr->u;
    return out;
}

FiberIntervalSet magnify_set(const DistanceFieldPair& df, const NormalBundle& nb,
                             const SetQuery& a, double eps, double T) {
    if (eps <= 0 || T <= 0) fail(ErrorCode::Other, "magnification needs eps > 0, T > 0");
    const GridSet& gs = *df.source;
    const double h = gs.h;
    FiberIntervalSet out = FiberIntervalSet::empty_on(nb, T);

    const int n = (int)nb.samples.size();
    parallel_for(0, n, [&](int b, int e) {
        for (int i = b; i < e; ++i) {
            const BundleSample& s = nb.samples[i];
            const bool inner = s.side == Side::inner;
            const Vec2 dir = inner ? -s.u : s.u;
            double cap = std::min(eps * T, s.reach_on_side());
            if (!(cap > 0)) continue;

            IntervalList runs;  // in s-units along the ray
            if (a.fiber_intervals) {
                runs = intervals_clip(normalize_intervals(a.fiber_intervals(i, s)), 0, cap);
            } else {
                const double step = h / 2;
                int nsteps = (int)std::floor(cap / step);
                double open_at = -1;
                bool prev = false;
                auto member_at = [&](double sv) { return a.member(s.x + dir * sv); };
                // Transition refinement: bisect exact predicates, split the
                // step for rasters.
                auto refine = [&](double s0, double s1, bool want) {
                    if (!a.predicate) return 0.5 * (s0 + s1);
                    double lo = s0, hi = s1;
                    for (int it = 0; it < 12; ++it) {
                        double mid = 0.5 * (lo + hi);
                        (member_at(mid) == want ? hi : lo) = mid;
                    }
                    return 0.5 * (lo + hi);
                };
                for (int k = 1; k <= nsteps; ++k) {
                    double sv = k * step;
                    bool m = member_at(sv);
                    if (m && !prev) open_at = refine((k - 1) * step, sv, true);
                    if (!m && prev) {
                        runs.push_back({open_at, refine((k - 1) * step, sv, false)});
                        open_at = -1;
                    }
                    prev = m;
                }
                if (prev && open_at >= 0) runs.push_back({open_at, cap});
                // Merge sub-cell speckle gaps.
                IntervalList merged;
                for (const auto& r : runs) {
                    if (!merged.empty() && r.lo - merged.back().hi < h)
                        merged.back().hi = r.hi;
                    else
                        merged.push_back(r);
                }
                runs = std::move(merged);
            }

            IntervalList res;
            res.reserve(runs.size());
            for (const auto& r : runs) {
                double t0 = r.lo / eps, t1 = r.hi / eps;
                if (inner)
                    res.push_back({-t1, -t0});
                else
                    res.push_back({t0, t1});
            }
            out.fibers[i] = normalize_intervals(std::move(res));
        }
    });
    return out;
}

// ------------------------------------------------------------------- verdicts

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::differentiable: return "differentiable";
        case Verdict::r_differentiable_only: return "r-differentiable-only";
        case Verdict::not_differentiable: return "not-differentiable";
        default: return "inconclusive";
    }
}

Verdict classify_sequence(const std::vector<double>& eps, const std::vector<double>& values,
                          double tol_conv, const VerdictThresholds& th) {
    const size_t n = values.size();
    if (n < 4 || eps.front() / eps.back() < 8 - 1e-9) return Verdict::inconclusive;

    bool dec = true;
    for (size_t i = n - 3; i + 1 < n; ++i)
        if (values[i + 1] > values[i] * (1 + th.decrease_slack) + 1e-15) dec = false;
    if (dec && values.back() < tol_conv) return Verdict::differentiable;

    // Longest contiguous window with all values >= floor_nc spanning >= 4x.
    size_t i = 0;
    while (i < n) {
        if (values[i] < th.floor_nc) {
            ++i;
            continue;
        }
        size_t j = i;
        while (j + 1 < n && values[j + 1] >= th.floor_nc) ++j;
        if (eps[i] / eps[j] >= 4 - 1e-9) return Verdict::not_differentiable;
        i = j + 1;
    }
    return Verdict::inconclusive;
}

}  // namespace setderiv
