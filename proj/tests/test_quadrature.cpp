#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "dphi/errors.hpp"
#include "dphi/quadrature.hpp"

using namespace dphi;

TEST_CASE("gauss_legendre integrates polynomials of degree 2n-1 exactly") {
    std::vector<double> x, w;
    gauss_legendre(5, x, w);
    REQUIRE(x.size() == 5);
    for (int k = 0; k <= 9; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], k);
        const double exact = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
        CHECK(std::abs(s - exact) <= 1e-14);
    }
}

TEST_CASE("gauss_legendre rejects nonpositive orders") {
    std::vector<double> x, w;
    CHECK_THROWS_AS(gauss_legendre(0, x, w), invalid_spec);
}

TEST_CASE("disk quadrature validates its spec") {
    CHECK_THROWS_AS(DiskQuadrature::make({0, 16, 2.0}), invalid_spec);
    CHECK_THROWS_AS(DiskQuadrature::make({16, 0, 2.0}), invalid_spec);
    CHECK_THROWS_AS(DiskQuadrature::make({16, 16, 0.5}), invalid_spec);
    CHECK_THROWS_AS(Measure::weighted(-1.0), invalid_spec);
}

TEST_CASE("radial nodes live strictly inside (0,1) and cluster at the boundary") {
    const DiskQuadrature q = DiskQuadrature::make({64, 8, 2.0});
    for (double r : q.r) {
        CHECK(r > 0.0);
        CHECK(r < 1.0);
    }
    // Clustering: the outermost node is much closer to 1 than a plain GL node.
    CHECK(1.0 - q.r.back() < 5e-4);
}

TEST_CASE("total masses of the plain and weighted measures") {
    const DiskQuadrature q = DiskQuadrature::make({128, 64, 2.0});
    const auto one = [](std::complex<double>) { return 1.0; };
    CHECK(std::abs(integrate_disk(one, Measure::plain(), q) - 1.0) <= 1e-13);
    // After the clustering substitution the radial integrand carries
    // (1-t)^(2a+1); a half-integer exponent (a=0.25) caps the Gauss rate at
    // ~1e-11 for 128 nodes, so the bound is algebraic, not spectral.
    for (double a : {0.25, 0.5, 0.75}) {
        const double mass = integrate_disk(one, Measure::weighted(a), q);
        CHECK(std::abs(mass - 1.0 / (a + 1.0)) <= 1e-10);
    }
}

TEST_CASE("radial moments match the beta-function recurrence") {
    const DiskQuadrature q = DiskQuadrature::make({128, 32, 2.0});
    for (double a : {0.25, 0.75}) {
        // integral |z|^{2k} (1-|z|^2)^a dA/pi = prod_{j<=k} j/(a+1+j) / (a+1)
        double exact = 1.0 / (a + 1.0);
        for (int k = 0; k <= 5; ++k) {
            if (k > 0) exact *= k / (a + 1.0 + k);
            const auto g = [k](std::complex<double> z) { return std::pow(std::norm(z), k); };
            const double got = integrate_disk(g, Measure::weighted(a), q);
            // Same algebraic-rate cap as the mass test for a = 0.25.
            CHECK(std::abs(got - exact) <= 1e-10);
        }
    }
    // Plain measure: integral |z|^2 dA/pi = 1/2, integral Re(z)^2 dA/pi = 1/4.
    CHECK(std::abs(integrate_disk([](std::complex<double> z) { return std::norm(z); },
                                  Measure::plain(), q) -
                   0.5) <= 1e-13);
    CHECK(std::abs(integrate_disk([](std::complex<double> z) { return z.real() * z.real(); },
                                  Measure::plain(), q) -
                   0.25) <= 1e-13);
}

TEST_CASE("pure angular harmonics integrate to zero") {
    const DiskQuadrature q = DiskQuadrature::make({32, 16, 2.0});
    const auto g = [](std::complex<double> z) { return (z * z * z).real(); };
    CHECK(std::abs(integrate_disk(g, Measure::plain(), q)) <= 1e-15);
}

TEST_CASE("serial and parallel disk integration agree bit for bit") {
    const DiskQuadrature q = DiskQuadrature::make({96, 48, 2.0});
    const auto g = [](std::complex<double> z) { return std::exp(z.real()) + std::norm(z); };
    for (const Measure& m : {Measure::plain(), Measure::weighted(0.5)}) {
        const double a = integrate_disk(g, m, q);
        const double b = integrate_disk_serial(g, m, q);
        CHECK(a == b);
    }
}

TEST_CASE("non-finite integrand values raise numeric_failure") {
    const DiskQuadrature q = DiskQuadrature::make({8, 8, 2.0});
    const auto bad = [](std::complex<double> z) { return std::sqrt(z.real()); }; // NaN left of 0
    CHECK_THROWS_AS(integrate_disk(bad, Measure::plain(), q), numeric_failure);
    CHECK_THROWS_AS(integrate_disk_serial(bad, Measure::plain(), q), numeric_failure);
}
