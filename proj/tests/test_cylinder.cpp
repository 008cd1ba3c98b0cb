#include <random>

#include "doctest.h"
#include "setderiv/cylinder.hpp"
#include "setderiv/families.hpp"

using namespace setderiv;

TEST_CASE("magnify_point on the disk") {
    double h = 1.0 / 512;
    auto a = analyze(make_disk({0, 0}, 1.0), h, 0.6);

    auto outer = magnify_point(a->df, a->bp, {1.5, 0}, 0.25);
    REQUIRE(outer.status == MagnifyStatus::ok);
    CHECK(outer.t == doctest::Approx(2.0).epsilon(0.01));
    CHECK(outer.x.x == doctest::Approx(1.0).epsilon(0.01));
    CHECK(outer.u.x == doctest::Approx(1.0).epsilon(0.01));

    auto inner = magnify_point(a->df, a->bp, {0.5, 0}, 0.25);
    REQUIRE(inner.status == MagnifyStatus::ok);
    CHECK(inner.t == doctest::Approx(-2.0).epsilon(0.01));
    CHECK(inner.x.x == doctest::Approx(1.0).epsilon(0.01));
    CHECK(inner.u.x == doctest::Approx(1.0).epsilon(0.01));

    auto center = magnify_point(a->df, a->bp, {0.002, 0.001}, 0.25);
    CHECK(center.status == MagnifyStatus::skeleton);
}

TEST_CASE("fiber round trip: invert the magnification") {
    double h = 1.0 / 512;
    auto a = analyze(make_disk({0, 0}, 1.0), h, 0.6);
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> U(-1.4, 1.4);
    double eps = 0.125;
    int done = 0;
    for (int i = 0; i < 20000 && done < 1000; ++i) {
        Vec2 z{U(rng), U(rng)};
        if (!a->gs.in_domain(z)) continue;
        auto m = magnify_point(a->df, a->bp, z, eps);
        if (m.status != MagnifyStatus::ok) continue;
        Vec2 back = m.x + m.u * (eps * m.t);
        CHECK(dist(back, z) <= 2 * h);
        ++done;
    }
    CHECK(done == 1000);
}

TEST_CASE("slab masses over the disk bundle") {
    double h = 1.0 / 512;
    auto a = analyze(make_disk({0, 0}, 1.0), h, 0.6);
    FiberIntervalSet slab = make_slab(a->nb, 2, [](const BundleSample& s) -> std::optional<Interval> {
        if (s.side != Side::outer) return std::nullopt;
        return Interval{0, 1};
    });
    CHECK(m_measure(slab) == doctest::Approx(2 * M_PI).epsilon(0.02));

    FiberIntervalSet half = make_slab(a->nb, 2, [](const BundleSample& s) -> std::optional<Interval> {
        if (s.side != Side::outer) return std::nullopt;
        return Interval{0, 0.5};
    });
    CHECK(sym_diff_measure(slab, half) == doctest::Approx(M_PI).epsilon(0.02));
    CHECK(sym_diff_measure(slab, slab) == doctest::Approx(0.0));
}

TEST_CASE("annulus magnifies to the unit slab") {
    double h = 1.0 / 512;
    auto a = analyze(make_disk({0, 0}, 1.0), h, 0.6);
    double eps = 0.1;
    auto query = SetQuery::from_predicate(
        [](const Vec2& z) { double r = z.norm(); return r > 1.0 && r <= 1.1; });
    FiberIntervalSet img = magnify_set(a->df, a->nb, query, eps, 2.0);
    CHECK(m_measure(img) == doctest::Approx(2 * M_PI).epsilon(0.03));

    FiberIntervalSet empty_img =
        magnify_set(a->df, a->nb, SetQuery::from_predicate([](const Vec2&) { return false; }),
                    eps, 2.0);
    CHECK(m_measure(empty_img) == doctest::Approx(0.0));
}

TEST_CASE("grid-backed sets magnify like predicates") {
    double h = 1.0 / 512;
    auto a = analyze(make_disk({0, 0}, 1.0), h, 0.6);
    GridSet ring = build_grid_set_on(
        make_difference(make_disk({0, 0}, 1.1), make_disk({0, 0}, 1.0)), h, a->gs.margin,
        a->gs.bbox);
    FiberIntervalSet img = magnify_set(a->df, a->nb, SetQuery::from_grid(ring), 0.1, 2.0);
    CHECK(m_measure(img) == doctest::Approx(2 * M_PI).epsilon(0.03));
}

TEST_CASE("bundle mismatch is rejected") {
    double h = 1.0 / 128;
    auto a = analyze(make_disk({0, 0}, 1.0), h, 0.5);
    auto b = analyze(make_rect({0, 0}, {1, 1}), h, 0.25);
    FiberIntervalSet fa = FiberIntervalSet::empty_on(a->nb, 1);
    FiberIntervalSet fb = FiberIntervalSet::empty_on(b->nb, 1);
    CHECK_THROWS(sym_diff_measure(fa, fb));
}

TEST_CASE("comb image mass at eps = b_k") {
    double h = std::pow(2.0, -9);
    CombInstance ci = make_comb(dyadic_sequence(5), 4, h);
    auto a = analyze(ci.f, h, 0.3);
    FamilySpec fam = ci.family(a);
    double eps = ci.b(2);
    FiberIntervalSet img = magnify_set(a->df, a->nb, fam.a_query(eps), eps, 1.0);
    CHECK(m_measure(img) == doctest::Approx(2.0 / 3.0).epsilon(0.05));
}

TEST_CASE("verdict classification rules") {
    VerdictThresholds th;
    std::vector<double> eps = {0.5, 0.25, 0.125, 0.0625};
    CHECK(classify_sequence(eps, {0.1, 0.05, 0.02, 0.001}, 0.01, th) == Verdict::differentiable);
    CHECK(classify_sequence(eps, {0, 0, 0, 0}, 0.01, th) == Verdict::differentiable);
    CHECK(classify_sequence(eps, {0.6, 0.7, 0.66, 0.71}, 0.01, th) ==
          Verdict::not_differentiable);
    CHECK(classify_sequence(eps, {0.6, 0.1, 0.2, 0.15}, 0.01, th) == Verdict::inconclusive);
    // Too short a schedule stays inconclusive.
    CHECK(classify_sequence({0.5, 0.25}, {0, 0}, 0.01, th) == Verdict::inconclusive);
}

TEST_CASE("monotone families produce nested fibers") {
    double h = 1.0 / 256;
    auto a = analyze(make_disk({0, 0}, 1.0), h, 0.6);
    double eps = 0.125;
    auto band = [](double w) {
        return SetQuery::from_predicate(
            [w](const Vec2& z) { double r = z.norm(); return r > 1.0 && r <= 1.0 + w; });
    };
    auto img1 = magnify_set(a->df, a->nb, band(0.05), eps, 2.0);
    auto img2 = magnify_set(a->df, a->nb, band(0.1), eps, 2.0);
    double extra = m_measure(fis_subtract(img1, img2));
    CHECK(extra == doctest::Approx(0.0).epsilon(1e-9));
}
