#include "doctest.h"

#include <complex>

#include "dphi/errors.hpp"
#include "dphi/run_config.hpp"

using namespace dphi;

TEST_CASE("run configuration JSON round-trip") {
    RunConfig cfg;
    cfg.command = "counting";
    cfg.map_spec = "poly:0,0,1";
    cfg.alpha = 0.75;
    cfg.order = 123;
    cfg.quad_radial = 64;
    cfg.quad_angular = 128;
    cfg.shells = 16;
    cfg.points = 32;
    cfg.has_w = true;
    cfg.w = std::complex<double>(0.25, -0.125);
    cfg.format = "json";
    cfg.out = "/tmp/x.json";
    cfg.roots = "aberth";
    cfg.tol = 1e-11;
    cfg.suite = "cov";
    cfg.validate();

    const RunConfig back = RunConfig::from_json(cfg.to_json());
    CHECK(back.command == cfg.command);
    CHECK(back.map_spec == cfg.map_spec);
    CHECK(back.alpha == cfg.alpha);
    CHECK(back.order == cfg.order);
    CHECK(back.quad_radial == cfg.quad_radial);
    CHECK(back.quad_angular == cfg.quad_angular);
    CHECK(back.shells == cfg.shells);
    CHECK(back.points == cfg.points);
    CHECK(back.has_w);
    CHECK(back.w == cfg.w);
    CHECK(back.format == cfg.format);
    CHECK(back.out == cfg.out);
    CHECK(back.roots == cfg.roots);
    CHECK(back.tol == cfg.tol);
    CHECK(back.suite == cfg.suite);
}

TEST_CASE("defaults survive a minimal document") {
    const RunConfig cfg = RunConfig::from_json("{\"command\":\"norm\"}");
    CHECK(cfg.command == "norm");
    CHECK(cfg.alpha == 0.5);
    CHECK(cfg.order == 200);
    CHECK_FALSE(cfg.has_w);
    CHECK(cfg.format == "human");
    cfg.validate();
}

TEST_CASE("validation rejects out-of-range fields") {
    RunConfig cfg;
    cfg.alpha = 1.5;
    CHECK_THROWS_AS(cfg.validate(), invalid_spec);
    cfg.alpha = 0.5;
    cfg.order = 0;
    CHECK_THROWS_AS(cfg.validate(), invalid_spec);
    cfg.order = 10;
    cfg.format = "yaml";
    CHECK_THROWS_AS(cfg.validate(), invalid_spec);
    cfg.format = "json";
    cfg.roots = "newton";
    CHECK_THROWS_AS(cfg.validate(), invalid_spec);
    cfg.roots = "companion";
    cfg.tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), invalid_spec);
    cfg.tol = 1e-13;
    cfg.suite = "everything";
    CHECK_THROWS_AS(cfg.validate(), invalid_spec);
    cfg.suite = "all";
    CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("malformed documents are flagged") {
    CHECK_THROWS_AS(RunConfig::from_json("{oops"), invalid_spec);
    CHECK_THROWS_AS(RunConfig::from_json("{\"schema\": 9}"), invalid_spec);
    CHECK_THROWS_AS(RunConfig::from_json("{\"order\": \"many\"}"), invalid_spec);
}
