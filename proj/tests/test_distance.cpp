#include <random>

#include "doctest.h"
#include "setderiv/bundle.hpp"
#include "setderiv/distance.hpp"

using namespace setderiv;

namespace {

GridSet random_bitmap(uint64_t seed, int n, int sites) {
    std::mt19937_64 rng(seed);
    auto shape = make_rect({0, 0}, {1, 1});  // placeholder extent
    GridSet gs;
    gs.h = 1.0 / n;
    gs.nx = n;
    gs.ny = n;
    gs.bbox = {{0, 0}, {1, 1}};
    gs.margin = 2 * gs.h;
    gs.mode = GridMode::solid;
    gs.occ.assign((size_t)n * n, 0);
    for (int s = 0; s < sites; ++s) {
        int ix = 2 + (int)(rng() % (uint64_t)(n - 4));
        int iy = 2 + (int)(rng() % (uint64_t)(n - 4));
        gs.occ[gs.idx(ix, iy)] = 1;
    }
    if (gs.count_occupied() == 0) gs.occ[gs.idx(n / 2, n / 2)] = 1;
    (void)shape;
    return gs;
}

}  // namespace

TEST_CASE("exact distance transform equals brute force on random bitmaps") {
    for (uint64_t seed = 0; seed < 10; ++seed) {
        GridSet gs = random_bitmap(seed, 96, 40);
        DistanceField df = distance_field(gs, gs.occ);
        auto oracle = brute_force_d2(gs);
        REQUIRE(df.d2 == oracle);
    }
}

TEST_CASE("nearest site realizes the distance") {
    GridSet gs = random_bitmap(17, 64, 12);
    DistanceField df = distance_field(gs, gs.occ);
    for (int iy = 0; iy < gs.ny; ++iy)
        for (int ix = 0; ix < gs.nx; ++ix) {
            uint32_t packed = df.site[df.idx(ix, iy)];
            int sy = (int)(packed / (uint32_t)gs.nx), sx = (int)(packed % (uint32_t)gs.nx);
            int64_t dd = (int64_t)(ix - sx) * (ix - sx) + (int64_t)(iy - sy) * (iy - sy);
            CHECK((uint32_t)dd == df.d2[df.idx(ix, iy)]);
            CHECK(gs.occupied(sx, sy));
        }
}

TEST_CASE("distance is 1-Lipschitz across neighbors") {
    GridSet gs = random_bitmap(23, 80, 25);
    DistanceField df = distance_field(gs, gs.occ);
    for (int iy = 0; iy + 1 < gs.ny; ++iy)
        for (int ix = 0; ix + 1 < gs.nx; ++ix) {
            double d0 = df.dist(ix, iy);
            CHECK(std::abs(d0 - df.dist(ix + 1, iy)) <= gs.h + 1e-12);
            CHECK(std::abs(d0 - df.dist(ix, iy + 1)) <= gs.h + 1e-12);
            CHECK(std::abs(d0 - df.dist(ix + 1, iy + 1)) <= gs.h * std::sqrt(2.0) + 1e-12);
        }
}

TEST_CASE("radial distance outside the unit disk") {
    double h = 1.0 / 256;
    auto a = analyze(make_disk({0, 0}, 1.0), h, 0.75);
    int ix, iy;
    a->gs.cell_of({1.5, 0}, ix, iy);
    CHECK(a->df.outer.dist(ix, iy) == doctest::Approx(0.5).epsilon(2 * h));
    auto pr = metric_projection(a->df, a->bp, {1.5, 0}, ProjSide::outer);
    CHECK(pr.d == doctest::Approx(0.5).epsilon(h));
    CHECK(pr.p.x == doctest::Approx(1.0).epsilon(h));
    CHECK(std::abs(pr.p.y) < 2 * h);
    CHECK(pr.u.x == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("inner distance at the center of the unit square") {
    double h = 1.0 / 256;
    auto a = analyze(make_rect({0, 0}, {1, 1}), h, 0.25);
    int ix, iy;
    a->gs.cell_of({0.5, 0.5}, ix, iy);
    CHECK(a->df.inner.dist(ix, iy) == doctest::Approx(0.5).epsilon(4 * h));
}

TEST_CASE("two far sites tie on the bisector") {
    GridSet gs;
    int n = 64;
    gs.h = 1.0 / 16;
    gs.nx = gs.ny = n;
    gs.bbox = {{0, 0}, {4, 4}};
    gs.margin = 2 * gs.h;
    gs.mode = GridMode::solid;
    gs.occ.assign((size_t)n * n, 0);
    gs.occ[gs.idx(16, 32)] = 1;  // two sites one unit apart
    gs.occ[gs.idx(48, 32)] = 1;
    DistanceField df = distance_field(gs, gs.occ);
    CHECK(df.multi[df.idx(32, 32)] == 1);
    CHECK(df.multi[df.idx(20, 32)] == 0);
}

TEST_CASE("inner projection of the unit square points upward from the bottom edge") {
    double h = 1.0 / 256;
    auto a = analyze(make_rect({0, 0}, {1, 1}), h, 0.25);
    auto pr = metric_projection(a->df, a->bp, {0.5, 0.25}, ProjSide::inner);
    // Oracle: nearest boundary point of (0.5, 0.25) is (0.5, 0).
    CHECK(pr.p.x == doctest::Approx(0.5).epsilon(2 * h));
    CHECK(std::abs(pr.p.y) < 2 * h);
    CHECK(pr.d == doctest::Approx(0.25).epsilon(2 * h));
    CHECK(pr.u.y == doctest::Approx(-1.0).epsilon(1e-2));  // outward
}

TEST_CASE("outer projection refuses points on the set") {
    double h = 1.0 / 128;
    auto a = analyze(make_disk({0, 0}, 1.0), h, 0.5);
    CHECK_THROWS(metric_projection(a->df, a->bp, {0.2, 0.1}, ProjSide::outer));
    CHECK_THROWS(metric_projection(a->df, a->bp, {40, 0}, ProjSide::outer));
}

TEST_CASE("projected points land on the contour") {
    double h = 1.0 / 256;
    auto a = analyze(make_disk({0, 0}, 1.0), h, 0.5);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(-1.3, 1.3);
    int checked = 0;
    for (int i = 0; i < 2000 && checked < 300; ++i) {
        Vec2 z{U(rng), U(rng)};
        double r = z.norm();
        if (r < 1 + 2 * h || r > 1.3) continue;
        auto pr = metric_projection(a->df, a->bp, z, ProjSide::outer);
        CHECK(std::abs(pr.p.norm() - 1.0) < h);
        CHECK(std::abs(pr.d - (r - 1)) < h);
        ++checked;
    }
    CHECK(checked >= 100);
}
