#include <cstdio>
#include <random>

#include "doctest.h"
#include "setderiv/errors.hpp"
#include "setderiv/grid.hpp"

using namespace setderiv;

TEST_CASE("disk raster occupies roughly pi/h^2 cells") {
    double h = 0.01;
    GridSet gs = build_grid_set(make_disk({0, 0}, 1.0), h, 0.1);
    CHECK(gs.mode == GridMode::solid);
    double area = gs.area();
    CHECK(area == doctest::Approx(M_PI).epsilon(0.01));
}

TEST_CASE("segment raster is boundary mode with empty interior") {
    GridSet gs = build_grid_set(make_segment({0, 0}, {0, 1}), 1.0 / 64, 0.25);
    CHECK(gs.mode == GridMode::boundary);
    CHECK(gs.count_occupied() > 32);
}

TEST_CASE("margin band must stay clear") {
    CHECK_THROWS_AS(build_grid_set(make_disk({0, 0}, 1.0), 0.01, 0.01), Error);
}

TEST_CASE("empty raster is an error") {
    // A disk far smaller than a cell leaves every center outside.
    CHECK_THROWS_AS(build_grid_set(make_disk({0.5001, 0.5001}, 1e-6), 1.0, 8.0), Error);
}

TEST_CASE("complement closure keeps the boundary layer and inverts up to it") {
    GridSet gs = build_grid_set(make_rect({0, 0}, {1, 1}), 1.0 / 32, 0.25);
    GridSet star = complement_closure(gs);
    // F* contains every unoccupied cell plus the one-cell boundary layer.
    size_t both = 0;
    for (size_t i = 0; i < gs.occ.size(); ++i) {
        if (!gs.occ[i]) CHECK(star.occ[i] == 1);
        if (gs.occ[i] && star.occ[i]) ++both;
    }
    CHECK(both > 0);  // the layer itself

    GridSet back = complement_closure(star);
    // Involution up to cells adjacent to the boundary.
    for (int iy = 1; iy + 1 < gs.ny; ++iy)
        for (int ix = 1; ix + 1 < gs.nx; ++ix) {
            bool near_boundary = false;
            for (int dy = -1; dy <= 1 && !near_boundary; ++dy)
                for (int dx = -1; dx <= 1; ++dx)
                    if (gs.occupied(ix + dx, iy + dy) != gs.occupied(ix, iy)) {
                        near_boundary = true;
                        break;
                    }
            if (!near_boundary)
                CHECK((back.occupied(ix, iy) != 0) == (gs.occupied(ix, iy) != 0));
        }
}

TEST_CASE("bitmap file round trip") {
    std::mt19937_64 rng(3);
    GridSet gs = build_grid_set(make_disk({0.2, -0.1}, 0.8), 1.0 / 48, 0.2);
    std::string path = "/tmp/setderiv_roundtrip.sdgs";
    save_sdgs(gs, path);
    GridSet back = load_sdgs(path);
    CHECK(back.nx == gs.nx);
    CHECK(back.ny == gs.ny);
    CHECK(back.mode == gs.mode);
    CHECK(back.h == doctest::Approx(gs.h));
    CHECK(back.bbox.lo.x == doctest::Approx(gs.bbox.lo.x));
    CHECK(back.occ == gs.occ);
    std::remove(path.c_str());
}
