#include "doctest.h"
#include "setderiv/contour.hpp"
#include "setderiv/families.hpp"

using namespace setderiv;

TEST_CASE("square contour length is the perimeter") {
    GridSet gs = build_grid_set(make_rect({0, 0}, {1, 1}), 1.0 / 512, 0.1);
    BoundaryPolyline bp = extract_boundary(gs);
    CHECK(bp.total_length == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("disk contour length is the circumference") {
    GridSet gs = build_grid_set(make_disk({0, 0}, 1.0), 1.0 / 512, 0.1);
    BoundaryPolyline bp = extract_boundary(gs);
    CHECK(bp.total_length == doctest::Approx(2 * M_PI).epsilon(0.02));
}

TEST_CASE("bitmap-only contour still tracks the disk length") {
    GridSet gs = build_grid_set(make_disk({0, 0}, 1.0), 1.0 / 512, 0.1);
    gs.shape = nullptr;  // force the corner-averaged occupancy path
    BoundaryPolyline bp = extract_boundary(gs);
    CHECK(bp.total_length == doctest::Approx(2 * M_PI).epsilon(0.05));
}

TEST_CASE("outward normals point away from the square") {
    GridSet gs = build_grid_set(make_rect({0, 0}, {1, 1}), 1.0 / 128, 0.1);
    BoundaryPolyline bp = extract_boundary(gs);
    for (const auto& s : bp.segments) {
        Vec2 probe = s.midpoint + s.normal * (2 * gs.h);
        CHECK(!gs.shape->contains(probe));
    }
}

TEST_CASE("comb contour length matches the analytic perimeter") {
    double h = std::pow(2.0, -10);
    CombInstance ci = make_comb(dyadic_sequence(5), 4, h);
    GridSet gs = build_grid_set(ci.f1, h, 0.1);
    BoundaryPolyline bp = extract_boundary(gs);
    // Teeth plus the merged wall: each rectangle contributes its perimeter.
    double expect = 0;
    for (int k = 1; k <= 4; ++k) {
        double w = ci.a[(size_t)k - 1] - ci.b(k);
        expect += 2 * (1 + w);
    }
    expect += 2 * (1 + ci.wall_width);
    CHECK(bp.total_length == doctest::Approx(expect).epsilon(0.02));
}

TEST_CASE("curve shapes contribute their segments directly") {
    GridSet gs = build_grid_set(make_segment({0, 0}, {0, 1}), 1.0 / 128, 0.1);
    BoundaryPolyline bp = extract_boundary(gs);
    CHECK(bp.total_length == doctest::Approx(1.0).epsilon(1e-9));
    for (const auto& s : bp.segments) CHECK(std::abs(s.normal.x) == doctest::Approx(1.0));
}
