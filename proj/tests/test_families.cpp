#include "doctest.h"
#include "setderiv/errors.hpp"
#include "setderiv/harness.hpp"

using namespace setderiv;

TEST_CASE("convex body support functions") {
    ConvexBody ball = ConvexBody::ball(1.0);
    CHECK(ball.support({0, 1}) == doctest::Approx(1.0));

    ConvexBody sq = ConvexBody::square(1.0);
    CHECK(sq.support({1, 0}) == doctest::Approx(0.5));
    Vec2 diag = Vec2{1, 1}.normalized();
    CHECK(sq.support(diag) == doctest::Approx(std::sqrt(2.0) / 2));
    CHECK(sq.convex_ok());

    ConvexBody pt = ConvexBody::point({0.3, -0.4});
    CHECK(pt.support({0, 1}) == doctest::Approx(-0.4));
    CHECK(pt.support({1, 0}) == doctest::Approx(0.3));

    ConvexBody seg = ConvexBody::segment({-0.5, 0}, {0.5, 0});
    CHECK(seg.support({1, 0}) == doctest::Approx(0.5));
    CHECK(seg.support({0, 1}) == doctest::Approx(0.0));
    CHECK(seg.face_max_norm({1, 0}) == doctest::Approx(0.5));

    CHECK(sq.steiner_point().norm() < 1e-6);
    CHECK(ConvexBody::point({0.3, -0.4}).steiner_point().x == doctest::Approx(0.3).epsilon(1e-4));

    CHECK_THROWS_AS(ConvexBody::polygon({{0, 0}, {1, 0}, {0.2, 0.1}, {0, 1}}), Error);
}

TEST_CASE("parallel family with the unit ball dilates the disk") {
    double h = 1.0 / 256;
    auto base = analyze(make_disk({0, 0}, 1.0), h, 0.6);
    FamilySpec fam = parallel_family(base, ConvexBody::ball(1.0));
    double eps = 0.125;
    CHECK(fam.member({1.1, 0}, eps));
    CHECK(!fam.member({1.2, 0}, eps));
    CHECK(!fam.member({1.1, 0}, 0.0));

    // Dilation identity: F + eps*B equals the eps-collar union F, cell-exact.
    GridSet dil = fam.materialize(eps);
    for (int iy = 0; iy < dil.ny; ++iy)
        for (int ix = 0; ix < dil.nx; ++ix) {
            bool expect = base->gs.occupied(ix, iy) ||
                          (!base->gs.occupied(ix, iy) &&
                           base->gs.shape->signed_distance(dil.center(ix, iy)) <= eps);
            CHECK((dil.occupied(ix, iy) != 0) == expect);
        }
}

TEST_CASE("parallel family with a segment widens the square sideways") {
    double h = 1.0 / 256;
    auto base = analyze(make_rect({0, 0}, {1, 1}), h, 0.3);
    FamilySpec fam = parallel_family(base, ConvexBody::segment({-0.5, 0}, {0.5, 0}));
    double eps = 0.25;
    CHECK(fam.member({1.1, 0.5}, eps));    // eps/2 to each side
    CHECK(!fam.member({1.15, 0.5}, eps));
    CHECK(fam.member({-0.1, 0.5}, eps));
    CHECK(!fam.member({0.5, 1.05}, eps));  // no vertical growth
}

TEST_CASE("parallel family with a point translates") {
    double h = 1.0 / 256;
    auto base = analyze(make_disk({0, 0}, 1.0), h, 0.6);
    Vec2 q{0.3, 0.2};
    FamilySpec fam = parallel_family(base, ConvexBody::point(q));
    double eps = 0.25;
    CHECK(fam.member({1.0 + 0.3 * eps - 0.01, 0.2 * eps}, eps));
    CHECK(!fam.member(Vec2{-1.01, 0} + q * eps * 0.5, eps));
}

TEST_CASE("minkowski associativity at grid scale") {
    double h = 1.0 / 128;
    auto base = analyze(make_rect({0, 0}, {1, 1}), h, 0.4);
    ConvexBody K = ConvexBody::square(0.5);
    FamilySpec fam = parallel_family(base, K);
    GridSet once = fam.materialize(0.25);

    auto base2 = std::make_shared<Analysis>(*base);
    base2->gs = fam.materialize(0.125);
    base2->gs.shape = nullptr;
    FamilySpec fam2 = parallel_family(base2, K);
    GridSet twice = fam2.materialize(0.125);

    // (F + aK) + bK vs F + (a+b)K within a one-cell band.
    int mism = 0;
    for (int iy = 0; iy < once.ny; ++iy)
        for (int ix = 0; ix < once.nx; ++ix)
            if (once.occupied(ix, iy) != twice.occupied(ix, iy)) {
                bool nearb = false;
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx)
                        if (once.occupied(ix + dx, iy + dy) != once.occupied(ix, iy)) nearb = true;
                if (!nearb) ++mism;
            }
    CHECK(mism == 0);
}

TEST_CASE("local parallel equals the ball dilation for a convex set") {
    double h = 1.0 / 256;
    auto base = analyze(make_disk({0, 0}, 1.0), h, 0.6);
    FamilySpec loc = local_parallel_family(base);
    double eps = 0.125;
    // r = +inf on the disk, so the stamp height is exactly eps.
    CHECK(loc.member({1.0 + eps - 0.01, 0}, eps));
    CHECK(!loc.member({1.0 + eps + 0.01, 0}, eps));
    CHECK(loc.member({0.5, 0}, eps));  // F itself stays in
    // eps = 0 gives F back.
    CHECK(!loc.member({1.001, 0}, 0.0));
}

TEST_CASE("comb instance geometry") {
    double h = std::pow(2.0, -10);
    CombInstance ci = make_comb(dyadic_sequence(7), 6, h);
    CHECK(ci.wall_width == doctest::Approx(std::pow(2.0, -8)));
    CHECK(ci.b(1) == doctest::Approx(0.375));
    CHECK(ci.f1->contains({0.4, 0.5}));        // tooth 1
    CHECK(!ci.f1->contains({0.3, 0.5}));       // slot 1
    CHECK(ci.f->contains({-0.5, 0.5}));        // the block
    CHECK(ci.member_f({0.05, 0.5}, 0.1));      // swept strip at eps=0.1
    CHECK(!ci.member_f({0.05, 0.5}, 0.0));
    // Teeth below resolution are refused.
    CHECK_THROWS_AS(make_comb(dyadic_sequence(13), 12, h), Error);
}

TEST_CASE("split instance: predicted derivative and family membership") {
    SplitInstance si = make_split(false);
    CHECK(si.member_f({-0.05, 0.5}, 0.0));
    CHECK(!si.member_f({-0.05, 0.5}, 0.1));  // vacated crack strip
    CHECK(si.member_f({-1.05, 0.5}, 0.1));   // gained on the far left
    double h = 1.0 / 256;
    auto base_c = analyze(si.c_curve, h, 0.25);
    FiberIntervalSet B = si.predicted(base_c->nb, 1.0);
    // Mass: left face slab (0,1] of length 1 plus the crack slab: 2 total.
    CHECK(m_measure(B) == doctest::Approx(2.0).epsilon(0.03));

    SplitInstance ident = make_split(true);
    auto B0 = ident.predicted(base_c->nb, 1.0);
    CHECK(m_measure(B0) == doctest::Approx(0.0));
}

TEST_CASE("support subgraph heights follow the support function") {
    double h = 1.0 / 256;
    auto base = analyze(make_disk({0, 0}, 1.0), h, 0.6);
    FiberIntervalSet B = support_subgraph(base->nb, ConvexBody::ball(1.0), 2.0);
    CHECK(m_measure(B) == doctest::Approx(2 * M_PI).epsilon(0.02));

    // A point body puts negative slabs on the far side.
    FiberIntervalSet Bp = support_subgraph(base->nb, ConvexBody::point({0.5, 0}), 2.0);
    double inner_mass = 0;
    for (size_t i = 0; i < Bp.fibers.size(); ++i)
        if (base->nb.samples[i].side == Side::inner)
            inner_mass += base->nb.samples[i].weight * intervals_length(Bp.fibers[i]);
    // Integral of |<q,u>| over the half circle where it is negative: |q| * 2.
    CHECK(inner_mass == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("essential boundedness flags far-away mass") {
    double h = 1.0 / 256;
    auto base = analyze(make_disk({0, 0}, 1.0), h, 0.6);
    FamilySpec par = parallel_family(base, ConvexBody::ball(1.0));
    auto ex = essential_boundedness(par, 1.0, {0.25, 0.125});
    CHECK(ex[0] == doctest::Approx(0.0));
    CHECK(ex[1] == doctest::Approx(0.0));

    // A fixed far square: excess ~ area/eps, diverging.
    FamilySpec bad;
    bad.kind = "detached";
    bad.base = base;
    bad.member = [](const Vec2& z, double e) {
        return e > 0 && z.x > 1.2 && z.x < 1.45 && z.y > -0.125 && z.y < 0.125;
    };
    auto exb = essential_boundedness(bad, 1.0, {0.25, 0.125});
    CHECK(exb[0] > 0.2);
    CHECK(exb[1] > 1.9 * exb[0] * 0.9);
}

TEST_CASE("normal decomposition accepts the split squares and rejects the comb") {
    std::vector<double> eps = {0.125, 0.0625, 0.03125};
    double h = std::pow(2.0, -8);
    SplitInstance si = make_split(false);
    auto good = normal_decomposition_check(si.f1, si.f2, si.f, eps, h);
    CHECK(good.pass);

    CombInstance ci = make_comb(dyadic_sequence(4), 3, h);
    auto bad = normal_decomposition_check(ci.f1, ci.f2, ci.f, eps, h);
    CHECK(!bad.pass);
}
