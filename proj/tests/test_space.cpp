#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "dphi/errors.hpp"
#include "dphi/space.hpp"

using namespace dphi;

namespace {

PowerSeries random_poly(int degree, std::mt19937& gen) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<cplx> c(static_cast<std::size_t>(degree) + 1);
    for (auto& v : c) v = cplx(dist(gen), dist(gen));
    return PowerSeries(std::move(c));
}

} // namespace

TEST_CASE("space parameter range is enforced") {
    CHECK_THROWS_AS(SpaceParams(0.0), invalid_spec);
    CHECK_THROWS_AS(SpaceParams(1.0), invalid_spec);
    CHECK_THROWS_AS(SpaceParams(-0.5), invalid_spec);
    CHECK_THROWS_AS(SpaceParams(1.5), invalid_spec);
    CHECK_THROWS_AS(SpaceParams(std::nan("")), invalid_spec);
    CHECK(SpaceParams(0.5).alpha == 0.5);
}

TEST_CASE("monomial norms and the coefficient norm") {
    const SpaceParams p(0.5);
    CHECK(monomial_norm_sq(p, 0) == 1.0);
    CHECK(std::abs(monomial_norm_sq(p, 1) - std::pow(2.0, 0.5)) <= 1e-15);
    CHECK(std::abs(monomial_norm_sq(p, 8) - 3.0) <= 1e-15);

    // ||1 + z||^2 = 1 + 2^{1-alpha}
    const PowerSeries f({cplx(1.0), cplx(1.0)});
    for (double a : {0.25, 0.5, 0.75}) {
        const SpaceParams pa(a);
        const double expect = std::sqrt(1.0 + std::pow(2.0, 1.0 - a));
        CHECK(std::abs(dirichlet_norm(f, pa) - expect) <= 1e-15);
    }
}

TEST_CASE("inner product diagonalizes monomials and is conjugate-linear in slot two") {
    const SpaceParams p(0.3);
    const PowerSeries z2 = PowerSeries::monomial(2, cplx(1.0));
    const PowerSeries z3 = PowerSeries::monomial(3, cplx(1.0));
    CHECK(inner(z2, z3, p) == cplx(0.0));
    CHECK(std::abs(inner(z2, z2, p) - monomial_norm_sq(p, 2)) <= 1e-15);

    std::mt19937 gen(31u);
    const PowerSeries f = random_poly(6, gen);
    const PowerSeries g = random_poly(6, gen);
    const cplx lhs = inner(f, scale(cplx(0.0, 1.0), g), p);
    const cplx rhs = cplx(0.0, -1.0) * inner(f, g, p);
    CHECK(std::abs(lhs - rhs) <= 1e-14);
    CHECK(std::abs(inner(f, f, p).real() - std::pow(dirichlet_norm(f, p), 2)) <= 1e-13);
    CHECK(std::abs(inner(f, f, p).imag()) <= 1e-15);
}

TEST_CASE("evaluation kernel reproduces point values") {
    std::mt19937 gen(202u);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (double a : {0.25, 0.5, 0.75}) {
        const SpaceParams p(a);
        double worst = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            const PowerSeries f = random_poly(20, gen);
            for (int j = 0; j < 10; ++j) {
                const cplx w = 0.8 / std::sqrt(2.0) * cplx(dist(gen), dist(gen));
                const cplx via_kernel = inner(f, kernel(w, p, f.order()), p);
                worst = std::max(worst, std::abs(via_kernel - evaluate(f, w)));
            }
        }
        CHECK(worst <= 1e-10);
    }
}

TEST_CASE("derivative kernel reproduces derivative values") {
    std::mt19937 gen(203u);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const SpaceParams p(0.5);
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const PowerSeries f = random_poly(20, gen);
        const PowerSeries df = derive(f);
        for (int j = 0; j < 10; ++j) {
            const cplx w = 0.8 / std::sqrt(2.0) * cplx(dist(gen), dist(gen));
            const cplx via_kernel = inner(f, dkernel(w, p, f.order()), p);
            worst = std::max(worst, std::abs(via_kernel - evaluate(df, w)));
        }
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("derivative kernel norm: closed value at 0 and series consistency") {
    for (double a : {0.25, 0.5, 0.75}) {
        const SpaceParams p(a);
        CHECK(std::abs(dkernel_norm(cplx(0.0), p) - std::pow(2.0, (a - 1.0) / 2.0)) <= 1e-15);
        const cplx w(0.4, -0.3);
        const double direct = dirichlet_norm(dkernel(w, p, 400), p);
        CHECK(std::abs(dkernel_norm(w, p) - direct) <= 1e-12);
    }
    CHECK_THROWS_AS(dkernel_norm(cplx(1.0), SpaceParams(0.5)), invalid_spec);
}

TEST_CASE("normalized monomials are an orthonormal system") {
    for (double a : {0.25, 0.5, 0.75}) {
        const SpaceParams p(a);
        for (int n = 0; n <= 100; ++n)
            CHECK(std::abs(dirichlet_norm(basis_e(n, p), p) - 1.0) <= 1e-14);
        for (int m = 0; m <= 10; ++m)
            for (int n = 0; n <= 10; ++n) {
                const cplx ip = inner(basis_e(m, p), basis_e(n, p), p);
                const double expect = (m == n) ? 1.0 : 0.0;
                CHECK(std::abs(ip - cplx(expect)) <= 1e-14);
            }
    }
}

TEST_CASE("quadrature norm is equivalent to the coefficient norm") {
    const DiskQuadrature q = DiskQuadrature::make({128, 256, 2.0});
    std::mt19937 gen(404u);
    for (double a : {0.25, 0.5, 0.75}) {
        const SpaceParams p(a);
        for (int trial = 0; trial < 5; ++trial) {
            const PowerSeries f = random_poly(15, gen);
            const double en = equivalent_norm(f, p, q);
            const double dn = dirichlet_norm(f, p);
            const double ratio = en / dn;
            CHECK(ratio > 0.5);
            CHECK(ratio < 2.0);
        }
        // The constant-only function has identical norms in both senses.
        const PowerSeries c({cplx(2.0, 0.0)});
        CHECK(std::abs(equivalent_norm(c, p, q) - 2.0) <= 1e-13);
    }
}
