#include "doctest.h"
#include "setderiv/config.hpp"
#include "setderiv/errors.hpp"

using namespace setderiv;

TEST_CASE("number literals, powers included") {
    CHECK(parse_real("0.125") == doctest::Approx(0.125));
    CHECK(parse_real("2^-12") == doctest::Approx(std::pow(2.0, -12)));
    CHECK(parse_real("1e-3") == doctest::Approx(1e-3));
    CHECK_THROWS_AS(parse_real("banana"), Error);
}

TEST_CASE("sections, keys, comments") {
    Config cfg = Config::parse_string(R"(
# a comment
[experiment]
name = steiner-square
seed = 42
[grid]
h = 2^-10
margin = 0.5
[epsilon]
kind = dyadic
start = 2^-3
count = 4
[test]
T = 1
)");
    CHECK(cfg.get_str("experiment", "name") == "steiner-square");
    CHECK(cfg.get_int("experiment", "seed", 0L) == 42);
    CHECK(cfg.get_real("grid", "h") == doctest::Approx(std::pow(2.0, -10)));
    ExperimentConfig ec = experiment_config_from(cfg);
    CHECK(ec.epsilons.size() == 4);
    CHECK(ec.epsilons[0] == doctest::Approx(0.125));
    CHECK(ec.epsilons[3] == doctest::Approx(0.015625));
    CHECK(ec.T == doctest::Approx(1.0));
}

TEST_CASE("shapes from config, including composites") {
    Config cfg = Config::parse_string(R"(
[shape]
kind = union
of = d r
[shape:d]
kind = disk
center = 0 0
radius = 1
[shape:r]
kind = rect
min = 0 -2
max = 0.5 2
)");
    ShapePtr s = shape_from_config(cfg, "shape");
    CHECK(s->contains({0.9, 0}));
    CHECK(s->contains({0.25, 1.5}));
    CHECK(!s->contains({0.9, 1.5}));
}

TEST_CASE("config errors carry the parse code") {
    CHECK_THROWS_AS(Config::parse_string("key = 1\n"), Error);
    Config cfg = Config::parse_string("[shape]\nkind = frisbee\n");
    try {
        shape_from_config(cfg, "shape");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ConfigParse);
    }
}
