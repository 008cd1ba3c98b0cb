#include "doctest.h"
#include "setderiv/geometry.hpp"
#include "setderiv/intervals.hpp"

#include <random>

using namespace setderiv;

TEST_CASE("segment projection clamps to endpoints") {
    Vec2 a{0, 0}, b{1, 0};
    CHECK(closest_on_segment(a, b, {0.5, 1}).x == doctest::Approx(0.5));
    CHECK(closest_on_segment(a, b, {-2, 1}).x == doctest::Approx(0));
    CHECK(segment_distance(a, b, {2, 0}) == doctest::Approx(1));
}

TEST_CASE("interval algebra basics") {
    IntervalList a = normalize_intervals({{0, 1}, {0.5, 2}, {3, 3}});
    REQUIRE(a.size() == 1);
    CHECK(a[0].hi == doctest::Approx(2));
    IntervalList b = {{1, 3}};
    CHECK(intervals_length(intervals_union(a, b)) == doctest::Approx(3));
    CHECK(intervals_length(intervals_intersect(a, b)) == doctest::Approx(1));
    CHECK(intervals_length(intervals_subtract(a, b)) == doctest::Approx(1));
    CHECK(intervals_symdiff_length(a, b) == doctest::Approx(2));
}

TEST_CASE("symmetric difference is a pseudometric on interval lists") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-2, 2);
    auto random_list = [&] {
        IntervalList v;
        int n = (int)(rng() % 4);
        for (int i = 0; i < n; ++i) {
            double lo = U(rng), len = std::abs(U(rng));
            v.push_back({lo, lo + len});
        }
        return normalize_intervals(std::move(v));
    };
    for (int it = 0; it < 500; ++it) {
        IntervalList x = random_list(), y = random_list(), z = random_list();
        double dxy = intervals_symdiff_length(x, y);
        double dyx = intervals_symdiff_length(y, x);
        double dxz = intervals_symdiff_length(x, z);
        double dzy = intervals_symdiff_length(z, y);
        CHECK(intervals_symdiff_length(x, x) == doctest::Approx(0).epsilon(1e-12));
        CHECK(dxy == doctest::Approx(dyx));
        CHECK(dxy <= dxz + dzy + 1e-9);
    }
}

TEST_CASE("interval subtraction against a brute oracle") {
    std::mt19937_64 rng(11);
    auto random_list = [&] {
        IntervalList v;
        int n = (int)(rng() % 4);
        for (int i = 0; i < n; ++i) {
            double lo = (double)(rng() % 64) / 8.0;
            double len = (double)(1 + rng() % 16) / 8.0;
            v.push_back({lo, lo + len});
        }
        return normalize_intervals(std::move(v));
    };
    auto member = [](const IntervalList& l, double t) {
        for (const auto& i : l)
            if (t >= i.lo && t < i.hi) return true;
        return false;
    };
    for (int it = 0; it < 200; ++it) {
        IntervalList a = random_list(), b = random_list();
        IntervalList d = intervals_subtract(a, b);
        for (double t = 0.0625; t < 12; t += 0.125)
            CHECK(member(d, t) == (member(a, t) && !member(b, t)));
    }
}
