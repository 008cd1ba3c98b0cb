#pragma once

#include <functional>
#include <optional>
#include <string>

#include "setderiv/bundle.hpp"
#include "setderiv/intervals.hpp"

namespace setderiv {

/// A subset of the normal cylinder encoded fiberwise: one disjoint sorted
/// t-interval list per bundle sample. Outer samples carry t > 0, inner
/// samples t < 0 (solid mode); boundary mode has t > 0 only. Everything is
/// clipped to |t| <= bound.
struct FiberIntervalSet {
    uint64_t bundle_id = 0;
    const NormalBundle* bundle = nullptr;
    double bound = 0;  // T
    std::vector<IntervalList> fibers;

    static FiberIntervalSet empty_on(const NormalBundle& nb, double T);
};

/// Pointwise set algebra, fiber by fiber.
FiberIntervalSet fis_union(const FiberIntervalSet& a, const FiberIntervalSet& b);
FiberIntervalSet fis_intersect(const FiberIntervalSet& a, const FiberIntervalSet& b);
FiberIntervalSet fis_subtract(const FiberIntervalSet& a, const FiberIntervalSet& b);
/// Scale t by a (Lemma-style reparameterization of a derivative candidate).
FiberIntervalSet fis_scale(const FiberIntervalSet& a, double factor);

/// Slab candidate: per-sample t-range from a callback (nullopt = skip).
FiberIntervalSet make_slab(
    const NormalBundle& nb, double T,
    const std::function<std::optional<Interval>(const BundleSample&)>& range);

/// Cylinder measure M = (1d Lebesgue in t) x (boundary weight).
double m_measure(const FiberIntervalSet& fis);
/// Weighted symmetric difference; the two sets must live on the same bundle.
double sym_diff_measure(const FiberIntervalSet& p, const FiberIntervalSet& q);
/// Same, restricted to samples passing the mask.
double sym_diff_measure_masked(const FiberIntervalSet& p, const FiberIntervalSet& q,
                               const std::vector<uint8_t>& mask);

std::string fis_to_csv(const FiberIntervalSet& fis);

// ---------------------------------------------------------------------------

enum class MagnifyStatus { ok, skeleton, on_boundary, out_of_domain };

struct MagnifiedPoint {
    MagnifyStatus status = MagnifyStatus::ok;
    double t = 0;
    Vec2 x, u;
};

/// Local magnification: z -> (d(z)/eps, p(z), u(z)) outside, and
/// (-d(z)/eps, p, u) inside with u still the outward normal.
MagnifiedPoint magnify_point(const DistanceFieldPair& df, const BoundaryPolyline& bp,
                             const Vec2& z, double eps);

/// Membership oracle for the set being magnified, in decreasing order of
/// fidelity: closed-form fiber heights (subgraph-type families), an exact
/// point predicate (bisection-refined transitions), or a raster (midpoint
/// transitions). `fiber_interval`, when set, wins; it returns the
/// intersection of the set with the ray x + s*dir as s-intervals.
struct SetQuery {
    std::function<IntervalList(int sample_index, const BundleSample&)> fiber_intervals;
    std::function<bool(const Vec2&)> predicate;
    const GridSet* raster = nullptr;

    bool member(const Vec2& z) const {
        if (predicate) return predicate(z);
        return raster && raster->contains_point(z);
    }
    static SetQuery from_grid(const GridSet& g) {
        SetQuery q;
        q.raster = &g;
        return q;
    }
    static SetQuery from_predicate(std::function<bool(const Vec2&)> f) {
        SetQuery q;
        q.predicate = std::move(f);
        return q;
    }
};

/// Fiberwise image of a set under the magnification map: scan each fiber ray
/// up to min(eps*T, reach) in steps of h/2, refine transitions, merge gaps
/// shorter than h, and rescale to t = +-s/eps.
FiberIntervalSet magnify_set(const DistanceFieldPair& df, const NormalBundle& nb,
                             const SetQuery& a, double eps, double T);

// ---------------------------------------------------------------------------

struct VerdictThresholds {
    double floor_nc = 0.25;        // lower bound marking non-convergence
    double tol_factor = 10.0;      // tol_conv = tol_factor * h * active weight
    double decrease_slack = 0.02;  // relative slack for "non-increasing"
};

enum class Verdict { differentiable, r_differentiable_only, not_differentiable, inconclusive };

std::string verdict_name(Verdict v);

struct ConvergenceReport {
    std::vector<double> epsilons;  // descending
    std::vector<double> values;    // M(tau_eps(A(eps)) sym-diff B)
    std::vector<double> excess;    // essential-boundedness excess per eps
    Verdict verdict = Verdict::inconclusive;
    double c = 0;  // restriction level when r-restricted
    double tol_conv = 0;
    double floor_nc = 0;
};

/// Decision rule on a finite sequence: differentiable when the last three
/// values are non-increasing and the final one is below tol_conv; not
/// differentiable when the values stay above floor_nc across a contiguous
/// 4x range of eps; inconclusive otherwise. Requires >= 4 epsilons spanning
/// a factor >= 8.
Verdict classify_sequence(const std::vector<double>& eps, const std::vector<double>& values,
                          double tol_conv, const VerdictThresholds& th);

}  // namespace setderiv
