#include "doctest.h"
#include "setderiv/steiner.hpp"

using namespace setderiv;

namespace {
const std::vector<Vec2> kSquare = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
}

TEST_CASE("polygon support measures") {
    PolygonMeasures sq = polygon_support_measures(kSquare);
    CHECK(sq.total1 == doctest::Approx(4.0));
    CHECK(sq.total0 == doctest::Approx(2 * M_PI));
    for (double a : sq.theta0) CHECK(a == doctest::Approx(M_PI / 2));

    PolygonMeasures tri =
        polygon_support_measures({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
    CHECK(tri.total1 == doctest::Approx(3.0));
    for (double a : tri.theta0) CHECK(a == doctest::Approx(2 * M_PI / 3));

    // Regular n-gon hull of the circle: perimeter approaches 2*pi*R.
    std::vector<Vec2> ngon;
    int n = 128;
    for (int i = 0; i < n; ++i)
        ngon.push_back({std::cos(2 * M_PI * i / n), std::sin(2 * M_PI * i / n)});
    PolygonMeasures png = polygon_support_measures(ngon);
    CHECK(png.total1 == doctest::Approx(2 * M_PI).epsilon(0.001));
    CHECK(png.total0 == doctest::Approx(2 * M_PI));

    CHECK_THROWS(polygon_support_measures({{0, 0}, {1, 0}, {0.4, 0.1}, {0, 1}}));
}

TEST_CASE("square collar area matches the closed form") {
    double t = 0.1;
    PolygonShape shape(kSquare);
    auto f = [&](const Vec2& z) {
        double s = shape.signed_distance(z);
        return (s > 0 && s <= t) ? 1.0 : 0.0;
    };
    SteinerCheck sc = steiner_check_polygon(kSquare, f, t, false, 1.0 / 512, 1.0 / 1024);
    double closed = 4 * t + M_PI * t * t;
    CHECK(sc.rhs == doctest::Approx(closed).epsilon(1e-9));
    CHECK(sc.rel_err < 0.01);
}

TEST_CASE("inner collar of the square with reach caps") {
    double t = 0.1;
    PolygonShape shape(kSquare);
    auto f = [&](const Vec2& z) {
        double s = shape.signed_distance(z);
        return (s < 0 && -s <= t) ? 1.0 : 0.0;
    };
    SteinerCheck sc = steiner_check_polygon(kSquare, f, t, true, 1.0 / 512, 1.0 / 1024);
    CHECK(sc.rhs == doctest::Approx(4 * t - 4 * t * t).epsilon(1e-4));
    CHECK(sc.rel_err < 0.02);
}

TEST_CASE("inner reach of square edge points") {
    PolygonShape shape(kSquare);
    CHECK(polygon_inner_reach(shape, {0.5, 0}, {0, 1}, 2.0) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(polygon_inner_reach(shape, {0.1, 0}, {0, 1}, 2.0) == doctest::Approx(0.1).epsilon(1e-6));
}

TEST_CASE("first-order grid check on the disk") {
    double h = 1.0 / 512;
    auto a = analyze(make_disk({0, 0}, 1.0), h, 0.5);
    double t = 0.05;
    auto f = [t](const Vec2& z) {
        double r = z.norm();
        return (r > 1 && r <= 1 + t) ? 1.0 : 0.0;
    };
    SteinerCheck sc = steiner_check_grid(*a, f, t, false);
    // First-order only: expect agreement to O(t^2 * weight).
    CHECK(std::abs(sc.lhs - sc.rhs) < 2 * t * t * a->nb.outer_weight());
    CHECK_THROWS(steiner_check_grid(*a, f, t, false, true));
}

TEST_CASE("q_measure: Lebesgue trace reduces to the cylinder measure") {
    double h = 1.0 / 256;
    auto a = analyze(make_disk({0, 0}, 1.0), h, 0.6);
    FiberIntervalSet slab = make_slab(a->nb, 2, [](const BundleSample& s) -> std::optional<Interval> {
        if (s.side != Side::outer) return std::nullopt;
        return Interval{0, 1};
    });
    DensitySpec leb = DensitySpec::lebesgue();
    CHECK(q_measure(slab, leb, a->nb) == doctest::Approx(m_measure(slab)).epsilon(1e-12));

    DensitySpec g = DensitySpec::gaussian(1.0);
    CHECK(q_measure(slab, g, a->nb) == doctest::Approx(std::exp(-0.5)).epsilon(0.02));

    // Negative-side-only candidate with a zero inner density.
    DensitySpec zero_minus = g;
    zero_minus.fbar_minus = [](const Vec2&) { return 0.0; };
    FiberIntervalSet inner_slab =
        make_slab(a->nb, 2, [](const BundleSample& s) -> std::optional<Interval> {
            if (s.side != Side::inner) return std::nullopt;
            return Interval{-0.5, 0};
        });
    CHECK(q_measure(inner_slab, zero_minus, a->nb) == doctest::Approx(0.0));
}

TEST_CASE("measure derivative of the constant family is zero") {
    double h = 1.0 / 256;
    auto base = analyze(make_disk({0, 0}, 1.0), h, 0.6);
    FamilySpec fam = constant_family(base);
    FiberIntervalSet empty = FiberIntervalSet::empty_on(base->nb, 1.0);
    auto rep = measure_derivative_check(fam, empty, DensitySpec::gaussian(1.0),
                                        {0.25, 0.125, 0.0625}, 1e-6, false);
    CHECK(rep.qb == doctest::Approx(0.0));
    for (double r : rep.ratio) CHECK(r == doctest::Approx(0.0));
    CHECK(rep.pass);
}

TEST_CASE("lebesgue local-parallel rate matches the slab measure") {
    double h = 1.0 / 256;
    auto base = analyze(make_rect({0, 0}, {1, 1}), h, 0.4);
    FamilySpec loc = local_parallel_family(base);
    FiberIntervalSet B = local_parallel_candidate(base->nb, 2.0);
    auto rep = measure_derivative_check(loc, B, DensitySpec::lebesgue(),
                                        {0.125, 0.0625, 0.03125}, 0.15, false);
    // Q(B) = M(B) = integral of r^1 over the outer bundle = perimeter here.
    CHECK(rep.qb == doctest::Approx(4.0).epsilon(0.02));
    CHECK(rep.pass);
}

TEST_CASE("gaussian boundary-density residual decreases on the disk") {
    double h = 1.0 / 256;
    auto a = analyze(make_disk({0, 0}, 1.0), h, 0.6);
    DensitySpec g = DensitySpec::gaussian(1.0);
    auto [rp1, rm1] = density_residual(*a, g, 0.25);
    auto [rp2, rm2] = density_residual(*a, g, 0.0625);
    CHECK(rp2 < rp1);
    CHECK(rm2 < rm1);
}
