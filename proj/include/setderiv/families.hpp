#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "setderiv/cylinder.hpp"

namespace setderiv {

/// Convex structuring body: a point/segment/polygon hull, optionally rounded
/// by a ball radius (verts empty = pure ball).
struct ConvexBody {
    std::vector<Vec2> verts;
    double ball_radius = 0;

    /// Support function h_K for unit u.
    double support(const Vec2& u) const;
    /// a(u): largest norm among points of K realizing the support in direction u.
    double face_max_norm(const Vec2& u) const;
    double max_norm() const;
    Vec2 steiner_point() const;
    /// Distance from p to the body (0 inside).
    double distance(const Vec2& p) const;
    /// Distance from p to scale*K.
    double distance_scaled(const Vec2& p, double scale) const;
    bool is_point() const { return ball_radius == 0 && verts.size() == 1; }
    bool is_ball() const { return verts.empty(); }
    /// Discrete sublinearity check on sampled direction pairs.
    bool convex_ok(int samples = 64) const;

    static ConvexBody ball(double radius);
    static ConvexBody point(Vec2 q);
    static ConvexBody segment(Vec2 a, Vec2 b);
    static ConvexBody square(double side);  // centered at the origin
    static ConvexBody polygon(std::vector<Vec2> verts);  // must be convex
};

/// eps-family of sets F(eps) with F(0) = the base. Families created from
/// per-fiber height functions also expose the exact ray description of
/// A(eps) = F(eps) sym-diff F, which magnify_set prefers.
struct FamilySpec {
    std::string kind;
    std::shared_ptr<Analysis> base;
    double eps_max = 1;

    std::function<bool(const Vec2&, double)> member;                            // F(eps)
    std::function<IntervalList(int, const BundleSample&, double)> a_fiber;      // optional

    bool member_A(const Vec2& z, double eps) const {
        return member(z, eps) != member(z, 0.0);
    }
    /// A(eps) as a membership oracle for magnification.
    SetQuery a_query(double eps) const;
    /// Point-predicate variant even when a fiber description exists.
    SetQuery a_query_pointwise(double eps) const;
    /// Raster of F(eps) on the base grid.
    GridSet materialize(double eps) const;
    /// Family under a time change, F(f(eps)).
    FamilySpec reparam(const std::function<double(double)>& f, const std::string& tag) const;
};

FamilySpec constant_family(std::shared_ptr<Analysis> base);

/// Minkowski family F + eps*K. Exact membership for disk/convex-polygon
/// bases and for ball bodies on any base with a trustworthy outside
/// distance; otherwise a cached raster dilation by eps*K.
FamilySpec parallel_family(std::shared_ptr<Analysis> base, const ConvexBody& K);

/// F union {x + tu : 0 < t <= eps*(r wedge 1)} along outer normals.
FamilySpec local_parallel_family(std::shared_ptr<Analysis> base);
/// Its theoretical derivative {0 <= t <= r wedge 1}.
FiberIntervalSet local_parallel_candidate(const NormalBundle& nb, double T);

/// Subgraph family along outer normals: heights h_eps per sample, capped by
/// reach. `g` is the claimed per-sample derivative of eps -> h_eps.
FamilySpec subgraph_family(std::shared_ptr<Analysis> base,
                           std::function<double(const BundleSample&, double)> h_eps,
                           std::function<double(const BundleSample&)> g, double T_declared);
FiberIntervalSet subgraph_candidate(const NormalBundle& nb,
                                    const std::function<double(const BundleSample&)>& g, double T);

/// Slab with signed height h_K(u) per fiber: the support-function subgraph.
FiberIntervalSet support_subgraph(const NormalBundle& nb, const ConvexBody& K, double T);

// ------------------------------------------------------------------ comb

/// Comb of K vertical teeth [b_k, a_k] x [0,1] with b_k = (a_k + a_{k+1})/2,
/// plus a limit wall [0, a_{K+1}/2] x [0,1] holding the merged mass of all
/// unresolved teeth, and the block F2 = [-1,0] x [0,1]. The evolving family
/// is F1 union [-1, eps] x [0,1].
struct CombInstance {
    std::vector<double> a;  // a_1..a_{K+1}
    int teeth = 0;
    double wall_width = 0;
    int merged_resolvable = 0;  // merged teeth that the grid could still resolve
    ShapePtr f1, f2, f;         // f = f1 union f2
    std::function<bool(const Vec2&, double)> member_f;  // F(eps)

    double b(int k) const { return 0.5 * (a[(size_t)k - 1] + a[(size_t)k]); }
    FamilySpec family(std::shared_ptr<Analysis> base) const;
};

/// `a` must hold K+1 strictly decreasing positive values.
CombInstance make_comb(const std::vector<double>& a, int K, double h);
std::vector<double> dyadic_sequence(int count);

// ------------------------------------------------------------------ split

/// Two unit squares F1 = [0,1]^2, F2 = [-1,0] x [0,1] with F2 translated
/// left by eps (or held fixed). The boundary set of interest is
/// C = dF1 union dF2, which includes the crack {0} x [0,1].
struct SplitInstance {
    ShapePtr f1, f2, f;
    ShapePtr c_curve;                                   // dF1 union dF2
    bool identity = false;
    std::function<bool(const Vec2&, double)> member_f;  // F(eps)

    /// Predicted derivative on the bundle of C.
    FiberIntervalSet predicted(const NormalBundle& nb_c, double T) const;
    FamilySpec family(std::shared_ptr<Analysis> base_c) const;
};

SplitInstance make_split(bool identity_rule);

/// Normal-decomposition diagnostic: the collar-overlap mass
/// mu((dF)_eps ∩ (dF1)_eps ∩ (dF2)_eps)/eps per eps, and companion sequences
/// for the derived vanishing conditions.
struct DecompositionReport {
    std::vector<double> epsilons;
    std::vector<double> joint;      // the defining sequence
    std::vector<double> sym_cap;    // (dF1 triangle dF2)_eps ∩ (dF1 ∩ dF2)_eps
    std::vector<double> cap_minus;  // ((dF1)_eps ∩ (dF2)_eps) \ (dF1 ∩ dF2)_eps
    bool pass = false;
};

DecompositionReport normal_decomposition_check(const ShapePtr& f1, const ShapePtr& f2,
                                               const ShapePtr& f,
                                               const std::vector<double>& epsilons, double h);

}  // namespace setderiv
