#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "setderiv/contour.hpp"
#include "setderiv/distance.hpp"

namespace setderiv {

enum class Side : uint8_t { outer = 0, inner = 1 };

/// One weighted sample of the extended normal bundle. u always points
/// outward; outer samples host the positive-t half of the fiber, inner
/// samples the negative-t half, so a weight is never counted on both sides.
/// Reaches use IEEE infinity for the unbounded flag.
struct BundleSample {
    Vec2 x;
    Vec2 u;
    Side side = Side::outer;
    double r_plus = 0;   // reach along +u, against F
    double r_minus = 0;  // reach along -u, against F*; +inf in boundary mode
    double weight = 0;
    bool regular = true;

    double reach_on_side() const { return side == Side::outer ? r_plus : r_minus; }
    double min_reach() const { return std::min(r_plus, r_minus); }
};

struct NormalBundle {
    std::vector<BundleSample> samples;
    GridMode mode = GridMode::solid;
    const GridSet* source = nullptr;
    double total_weight = 0;
    double rejected_length_outer = 0;  // boundary length whose probe failed
    double rejected_length_inner = 0;
    uint64_t id = 0;  // identity token for fiber-set compatibility checks

    double outer_weight() const;
    double inner_weight() const;

    // Nearest-sample lookup (used by subgraph membership predicates).
    int find_near(const Vec2& p, Side side, double radius) const;

    void build_index(const GridSet& gs);

private:
    std::unordered_map<int64_t, std::vector<int>> buckets_;
    int nx_ = 0;
    double h_ = 0;
    Vec2 origin_;
};

/// Reach along u from a boundary point x: the sup of s with x+su still
/// projecting to x, found by bisection to tolerance h/2. Returns +inf when
/// the predicate still holds at r_max.
double reach(const DistanceFieldPair& df, const BoundaryPolyline& bp, const Vec2& x, const Vec2& u,
             ProjSide side, double r_max);

/// One sample per polyline segment and side. Normals come from probing the
/// segment normal one cell out and projecting back; probes whose projection
/// strays more than 2h from the segment midpoint mark a non-regular point and
/// are dropped (their length is reported, not weighted).
NormalBundle sample_bundle(const GridSet& gs, const DistanceFieldPair& df,
                           const BoundaryPolyline& bp);

/// Keep samples with min(r_plus, r_minus) > c.
NormalBundle restrict_bundle(const NormalBundle& nb, double c);

std::string bundle_to_csv(const NormalBundle& nb);

/// Full pipeline convenience: raster, distance fields, contour, bundle.
struct Analysis {
    GridSet gs;
    DistanceFieldPair df;
    BoundaryPolyline bp;
    NormalBundle nb;
};

/// Note: Analysis owns gs; df/bp/nb keep pointers into it, so the struct must
/// stay put (heap-allocated via analyze()).
std::shared_ptr<Analysis> analyze(const ShapePtr& shape, double h, double margin);

}  // namespace setderiv
