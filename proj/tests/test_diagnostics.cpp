#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "dphi/diagnostics.hpp"
#include "dphi/errors.hpp"

using namespace dphi;

namespace {

std::vector<ShellSample> mk(std::initializer_list<double> values) {
    std::vector<ShellSample> out;
    double r = 0.5;
    for (double v : values) {
        out.push_back({r, v});
        r += 0.4 / static_cast<double>(values.size());
    }
    return out;
}

} // namespace

TEST_CASE("boundedness functional for a dilation") {
    const SpaceParams p(0.5);
    const SelfMap m = SelfMap::parse("dilation:0.5");
    const double got = b_functional(m, p, cplx(0.25));
    const double expect = std::sqrt(0.75) / std::pow(1.0 - 0.0625, 2.5);
    CHECK(std::abs(got - expect) <= 1e-13);
    CHECK(b_functional(m, p, cplx(0.75)) == 0.0);
    CHECK_THROWS_AS(b_functional(m, p, cplx(0.0)), invalid_spec);
    CHECK_THROWS_AS(b_functional(m, p, cplx(1.0)), invalid_spec);
}

TEST_CASE("boundedness functional blows up for the singular exponential map") {
    const SpaceParams p(0.75);
    const SelfMap m = SelfMap::parse("exp");
    const double v = b_functional(m, p, cplx(0.999));
    CHECK(v > 1e2);
    CHECK(v < 1e7);
}

TEST_CASE("parametric and inverted forms of the functional agree on a grid") {
    const SpaceParams p(0.5);
    for (const std::string s : {"dilation:0.5", "auto:0.3", "lens:0.1"}) {
        const SelfMap m = SelfMap::parse(s);
        for (double rw : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            for (int j = 0; j < 40; ++j) {
                const cplx w = std::polar(rw, 2.0 * std::numbers::pi * (j + 0.37) / 40.0);
                const double via_param = univalent_b(m, p, w);
                const double via_inverse = b_functional(m, p, m.eval(w));
                CHECK(std::abs(via_param - via_inverse) <= 1e-9 * std::max(1.0, via_param));
            }
        }
    }
    CHECK_THROWS_AS(univalent_b(SelfMap::parse("exp"), p, cplx(0.5)), invalid_spec);
    CHECK_THROWS_AS(univalent_b(SelfMap::parse("poly:0,0,1"), p, cplx(0.5)), invalid_spec);
}

TEST_CASE("dilation functional is bounded by its closed ceiling") {
    const SpaceParams p(0.5);
    const SelfMap m = SelfMap::parse("dilation:0.8");
    const double ceiling = 1.0 / std::pow(1.0 - 0.64, p.alpha + 2.0);
    for (double rw : {0.2, 0.5, 0.79}) {
        CHECK(univalent_b(m, p, cplx(rw)) <= ceiling * (1.0 + 1e-12));
    }
}

TEST_CASE("lens functional decays to zero along the real ray") {
    const SpaceParams p(0.5);
    const SelfMap m = SelfMap::parse("lens:0.1");
    double prev = 1e300;
    double first = 0.0;
    for (int k = 8; k <= 26; ++k) {
        const double v = univalent_b(m, p, cplx(1.0 - std::pow(2.0, -k)));
        if (k == 8) first = v;
        CHECK(v < prev);
        prev = v;
    }
    // Decay along the ray is a slow power of 1-r; k=26 has shed a factor ~94.
    CHECK(prev < first / 50.0);
}

TEST_CASE("automorphism functional stays within the distortion band") {
    const SpaceParams p(0.5);
    const double beta = 0.3;
    const SelfMap m = SelfMap::parse("auto:0.3");
    for (double rw : {0.5, 0.9, 0.99, 0.9999}) {
        for (int j = 0; j < 16; ++j) {
            const cplx w = std::polar(rw, 2.0 * std::numbers::pi * j / 16.0);
            const double v = univalent_b(m, p, w);
            const double pivot = std::pow(1.0 - beta * beta, p.alpha + 2.0) /
                                 std::pow(1.0 - std::norm(w), 2.0);
            CHECK(v >= pivot / 16.0);
            CHECK(v <= pivot * 16.0);
        }
    }
}

TEST_CASE("standard shells are the dyadic approach") {
    const std::vector<double> s = standard_shells();
    REQUIRE(s.size() == 14);
    CHECK(s.front() == 0.5);
    CHECK(s.back() == 1.0 - std::pow(2.0, -14));
    const std::vector<double> s20 = standard_shells(20);
    CHECK(s20.size() == 20);
}

TEST_CASE("profile grid validation") {
    const SpaceParams p(0.5);
    const SelfMap m = SelfMap::parse("dilation:0.5");
    CHECK_THROWS_AS(radial_profile(m, p, {}, 8), invalid_spec);
    CHECK_THROWS_AS(radial_profile(m, p, {0.5, 0.5, 0.9999}, 8), invalid_spec);
    CHECK_THROWS_AS(radial_profile(m, p, {0.5, 0.9}, 8), invalid_spec);
    CHECK_THROWS_AS(radial_profile(m, p, {0.5, 1.5}, 8), invalid_spec);
    CHECK_THROWS_AS(radial_profile(m, p, standard_shells(), 0), invalid_spec);
    CHECK_THROWS_AS(radial_profile(SelfMap::parse("exp"), SpaceParams(0.45),
                                   standard_shells(), 4),
                    invalid_spec);
}

TEST_CASE("serial and parallel profiles are identical") {
    const SpaceParams p(0.5);
    for (const std::string s : {"poly:0,0.9,0.05", "lens:0.25"}) {
        const SelfMap m = SelfMap::parse(s);
        const BoundednessReport a = radial_profile(m, p, standard_shells(), 64);
        const BoundednessReport b = radial_profile_serial(m, p, standard_shells(), 64);
        REQUIRE(a.samples.size() == b.samples.size());
        for (std::size_t i = 0; i < a.samples.size(); ++i) {
            CHECK(a.samples[i].radius == b.samples[i].radius);
            CHECK(a.samples[i].max_b == b.samples[i].max_b);
        }
        CHECK(a.sup_estimate == b.sup_estimate);
        CHECK(a.verdict == b.verdict);
        CHECK(a.to_json() == b.to_json());
    }
}

TEST_CASE("trend classification rules on synthetic profiles") {
    CHECK(classify_trend(mk({1.0, 2.0}), 2.0) == Trend::inconclusive);
    CHECK(classify_trend(mk({1.0, 0.5, 0.0, 0.0, 0.0}), 1.0) == Trend::decaying_to_zero);
    CHECK(classify_trend(mk({1e3, 1e4, 1e5, 1e6, 1e7, 1e8}), 1e8) == Trend::diverging);
    CHECK(classify_trend(mk({1.0, 0.5, 0.1, 0.05, 0.02, 0.005}), 100.0) ==
          Trend::decaying_to_zero);
    CHECK(classify_trend(mk({5.0, 5.0, 5.0, 5.0, 6.0, 5.5}), 6.0) == Trend::bounded_plateau);
    CHECK(classify_trend(mk({1.0, 1.0, 1.0, 10.0, 0.1, 3.0}), 1e6) == Trend::inconclusive);
    CHECK(classify_trend(mk({100.0, 5.0, 2.0, 0.1}), 1000.0) == Trend::decaying_to_zero);
    // Divergence is recognized only beyond an absolute floor.
    CHECK(classify_trend(mk({1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4}), 1e-4) !=
          Trend::diverging);
}

TEST_CASE("verdicts for the map catalog") {
    const SpaceParams p(0.5);
    SUBCASE("strict dilations are compact-evidence with vanishing outer shells") {
        for (double r : {0.1, 0.5, 0.9}) {
            const BoundednessReport rep = diagnose(SelfMap::dilation(cplx(r)), p);
            CHECK(rep.verdict == Verdict::compact_evidence);
            CHECK(rep.samples.back().max_b == 0.0);
        }
    }
    SUBCASE("small-aperture lens maps decay") {
        for (double d : {0.05, 0.1, 0.15}) {
            CHECK(diagnose(SelfMap::lens(d), p).verdict == Verdict::compact_evidence);
        }
    }
    SUBCASE("wide lens maps plateau") {
        for (double d : {0.19, 0.25}) {
            const BoundednessReport rep = diagnose(SelfMap::lens(d), p);
            CHECK(rep.verdict == Verdict::bounded_noncompact_evidence);
        }
    }
    SUBCASE("very wide lens maps diverge") {
        CHECK(diagnose(SelfMap::lens(0.4), p).verdict == Verdict::unbounded_evidence);
    }
    SUBCASE("automorphisms diverge") {
        CHECK(diagnose(SelfMap::parse("auto:0.3"), p).verdict == Verdict::unbounded_evidence);
    }
    SUBCASE("the singular exponential map diverges past the absolute floor") {
        const BoundednessReport rep = diagnose(SelfMap::parse("exp"), SpaceParams(0.75));
        CHECK(rep.verdict == Verdict::unbounded_evidence);
        CHECK(rep.samples.back().max_b > 1e3);
    }
    SUBCASE("a contracting polynomial decays") {
        CHECK(diagnose(SelfMap::parse("poly:0,0.9,0.05"), p).verdict ==
              Verdict::compact_evidence);
    }
}

TEST_CASE("report serialization") {
    const SpaceParams p(0.5);
    const BoundednessReport rep = diagnose(SelfMap::parse("dilation:0.5"), p);
    const std::string js = rep.to_json();
    CHECK(js.find("\"schema\"") != std::string::npos);
    CHECK(js.find("dilation:0.5") != std::string::npos);
    CHECK(js.find("compact-evidence") != std::string::npos);
    CHECK(rep.to_json() == rep.to_json());
    const std::string csv = rep.to_csv();
    CHECK(csv.rfind("radius,max_b", 0) == 0);
    // one header plus one line per shell
    CHECK(std::count(csv.begin(), csv.end(), '\n') ==
          static_cast<long>(rep.samples.size()) + 1);
}

TEST_CASE("essential-norm evidence brackets") {
    const SpaceParams p(0.5);
    const EssentialBracket d = essential_norm_bracket(SelfMap::parse("dilation:0.5"), p);
    CHECK(d.shell_b_side < 1e-2);
    CHECK(d.test_fn_side < 1e-2);
    const EssentialBracket l = essential_norm_bracket(SelfMap::parse("lens:0.05"), p);
    CHECK(std::isfinite(l.shell_b_side));
    CHECK(std::isfinite(l.test_fn_side));
    CHECK(l.shell_b_side < 1.0);
    const EssentialBracket q = essential_norm_bracket(SelfMap::parse("poly:0,0,0.99"), p);
    CHECK(std::isfinite(q.shell_b_side));
    CHECK(std::isfinite(q.test_fn_side));
    CHECK_THROWS_AS(essential_norm_bracket(SelfMap::parse("exp"), p), invalid_spec);
    CHECK_THROWS_AS(essential_norm_bracket(SelfMap::parse("auto:0.3"), p), invalid_spec);
}

TEST_CASE("parameter monotonicity of the functional") {
    CHECK(monotonicity_check(SelfMap::parse("poly:0,0,0.9"), 0.3, 0.7) <= 1e-12);
    CHECK(monotonicity_check(SelfMap::parse("poly:0,0,0.9"), 0.25, 0.75) <= 1e-12);
    CHECK(monotonicity_check(SelfMap::parse("dilation:0.5"), 0.25, 0.75) <= 1e-12);
    CHECK(monotonicity_check(SelfMap::parse("lens:0.3"), 0.4, 0.6) <= 1e-12);
    CHECK(monotonicity_check(SelfMap::parse("dilation:0.5"), 0.5, 0.5) == 0.0);
    CHECK_THROWS_AS(monotonicity_check(SelfMap::parse("auto:0.3"), 0.3, 0.7), invalid_spec);
    CHECK_THROWS_AS(monotonicity_check(SelfMap::parse("dilation:0.5"), 0.7, 0.3),
                    invalid_spec);
}

TEST_CASE("interior-supported maps have identically vanishing outer functional") {
    const SpaceParams p(0.5);
    CHECK(small_supnorm_compactness(SelfMap::parse("dilation:0.5"), p));
    CHECK(small_supnorm_compactness(SelfMap::parse("poly:0,0.4,0.3"), p));
    CHECK_THROWS_AS(small_supnorm_compactness(SelfMap::parse("lens:0.1"), p), invalid_spec);
}
