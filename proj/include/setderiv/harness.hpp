#pragma once

#include "setderiv/families.hpp"

namespace setderiv {

/// Excess mass outside the eps*T collar of the boundary, per eps:
/// mu(A(eps) \ (dF)_{eps T}) / eps by cell counting on the base grid.
std::vector<double> essential_boundedness(const FamilySpec& family, double T,
                                          const std::vector<double>& epsilons);

/// Weak-boundedness diagnostic: for each target excess delta, the smallest T
/// from the probe list whose excess at the finest two eps stays below delta
/// (0 when none does).
std::vector<std::pair<double, double>> weak_boundedness(const FamilySpec& family,
                                                        const std::vector<double>& deltas,
                                                        const std::vector<double>& T_probe,
                                                        const std::vector<double>& epsilons);

enum class TestMode { full, r_restricted };

struct TestOptions {
    double T = 1;
    TestMode mode = TestMode::full;
    double c = 0;  // restriction level in r_restricted mode
    bool compute_excess = false;
    VerdictThresholds thresholds;
};

/// The convergence test M(tau_eps(A(eps)) sym-diff B) over a descending eps
/// schedule, with the r-restricted variant masking samples by
/// min(r_plus, r_minus) > c. tol_conv is pinned to
/// thresholds.tol_factor * h * (active bundle weight).
ConvergenceReport differentiability_test(const FamilySpec& family, const FiberIntervalSet& B,
                                         const std::vector<double>& epsilons,
                                         const TestOptions& opts);

struct AlgebraReport {
    ConvergenceReport unions, intersections, differences;
    ConvergenceReport reparam_double;  // f(eps) = 2 eps against 2B
    ConvergenceReport reparam_square;  // f(eps) = eps^2 against the empty set
    double mass_ratio_double = 0;      // measured mass ratio of the doubled family
    bool pass = false;
};

/// Set algebra of derivatives: union/difference/intersection of two families
/// against the fiberwise-combined candidates, plus the time-change cases.
AlgebraReport derivative_algebra_check(const FamilySpec& a1, const FamilySpec& a2,
                                       const FiberIntervalSet& b1, const FiberIntervalSet& b2,
                                       const std::vector<double>& epsilons,
                                       const TestOptions& opts);

}  // namespace setderiv
