#pragma once

#include <functional>

#include "setderiv/harness.hpp"

namespace setderiv {

/// First-order and zeroth-order boundary measures of a convex polygon:
/// per-edge length mass and per-vertex turning angle (total 2pi). The
/// normalization is pinned by the planar offset-area identity
/// area((F + tB) \ F) = t * total1 + (t^2/2) * total0.
struct PolygonMeasures {
    std::vector<Vec2> polygon;    // counterclockwise
    std::vector<double> theta1;   // per edge
    std::vector<double> theta0;   // per vertex
    double total1 = 0;
    double total0 = 0;
};

PolygonMeasures polygon_support_measures(const std::vector<Vec2>& ccw_vertices);

/// Closed-form offset area t*Theta1 + (t^2/2)*Theta0.
double offset_area_closed_form(const PolygonMeasures& pm, double t);

struct SteinerCheck {
    double lhs = 0;
    double rhs = 0;
    double rel_err = 0;
};

/// Validate the boundary expansion of the integral of f over the t-collar of
/// a convex polygon: lhs is a cell-center quadrature of f over the complement
/// (or both sides of the boundary), rhs integrates f along edge strips plus
/// exact vertex cones (outer side), with the inner side capped by the local
/// inward reach. quad_step controls the rhs quadrature resolution.
SteinerCheck steiner_check_polygon(const std::vector<Vec2>& poly,
                                   const std::function<double(const Vec2&)>& f, double t_max,
                                   bool two_sided, double grid_h, double quad_step);

/// First-order (edge-term only) variant on a sampled bundle; full-order
/// checks are not available for raster sets.
SteinerCheck steiner_check_grid(const Analysis& a, const std::function<double(const Vec2&)>& f,
                                double t_max, bool two_sided, bool full_order = false);

/// Inward reach of a boundary point of a convex polygon along the inner
/// normal (distance to the medial axis), by bisection on the exact geometry.
double polygon_inner_reach(const PolygonShape& poly, const Vec2& x, const Vec2& inward,
                           double cap);

// ---------------------------------------------------------------------------

/// Absolutely continuous measure with density f, plus boundary densities
/// f_plus/f_minus approximating f from outside/inside (trace by default).
struct DensitySpec {
    std::string name = "uniform";
    std::function<double(const Vec2&)> f;
    std::function<double(const Vec2&)> fbar_plus;   // defaults to f on the boundary
    std::function<double(const Vec2&)> fbar_minus;  // defaults to f on the boundary

    double boundary_plus(const Vec2& x) const { return fbar_plus ? fbar_plus(x) : f(x); }
    double boundary_minus(const Vec2& x) const { return fbar_minus ? fbar_minus(x) : f(x); }

    static DensitySpec lebesgue();
    static DensitySpec gaussian(double sigma);
    static DensitySpec uniform(double value);
};

/// Residuals of the boundary-density approximation at scale eps:
/// (1/eps) * integral over the outer (resp. inner) eps-collar of
/// |f - fbar(projection)|.
std::pair<double, double> density_residual(const Analysis& a, const DensitySpec& ds, double eps);

/// Q(B): per-fiber t-length weighted by the side-appropriate boundary density.
double q_measure(const FiberIntervalSet& B, const DensitySpec& ds, const NormalBundle& nb);

struct MeasureDerivativeReport {
    std::vector<double> epsilons;
    std::vector<double> ratio;      // P(A(eps))/eps
    std::vector<double> err;        // |ratio - Q(B)|
    std::vector<double> residual_plus;
    std::vector<double> residual_minus;
    double qb = 0;
    bool pass = false;  // err decreasing to below tol
};

/// d/deps P(A(eps)) against Q(B): grid quadrature of the density over A(eps)
/// divided by eps, compared with the cylinder-side value.
MeasureDerivativeReport measure_derivative_check(const FamilySpec& family,
                                                 const FiberIntervalSet& B, const DensitySpec& ds,
                                                 const std::vector<double>& epsilons, double tol,
                                                 bool check_density_condition = true);

/// Restricted variant: P(A(eps,c))/eps against Q(B restricted to reach > c).
MeasureDerivativeReport measure_derivative_check_restricted(const FamilySpec& family,
                                                            const FiberIntervalSet& B,
                                                            const DensitySpec& ds,
                                                            const std::vector<double>& epsilons,
                                                            double c, double tol);

}  // namespace setderiv
