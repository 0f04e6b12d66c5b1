#include "doctest.h"

#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "dphi/parallel.hpp"

using namespace dphi;

TEST_CASE("parallel_for visits every index exactly once") {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
}

TEST_CASE("parallel_for with zero iterations is a no-op") {
    bool touched = false;
    parallel_for(0, [&](std::size_t) { touched = true; });
    CHECK_FALSE(touched);
}

TEST_CASE("parallel_for rethrows the worker exception") {
    CHECK_THROWS_AS(parallel_for(100,
                                 [&](std::size_t i) {
                                     if (i == 37) throw std::out_of_range("boom");
                                 }),
                    std::out_of_range);
}

TEST_CASE("pairwise_sum handles small and empty inputs") {
    CHECK(pairwise_sum(std::span<const double>{}) == 0.0);
    const std::vector<double> one{3.5};
    CHECK(pairwise_sum(one) == 3.5);
}

TEST_CASE("pairwise_sum is exact on small integers") {
    std::vector<double> xs(1000);
    std::iota(xs.begin(), xs.end(), 1.0);
    CHECK(pairwise_sum(xs) == 500500.0);
}

TEST_CASE("pairwise_sum matches plain accumulation closely and deterministically") {
    std::mt19937 gen(12345u);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> xs(4097);
    for (double& x : xs) x = dist(gen);
    const double plain = std::accumulate(xs.begin(), xs.end(), 0.0);
    const double a = pairwise_sum(xs);
    const double b = pairwise_sum(xs);
    CHECK(a == b);
    CHECK(std::abs(a - plain) < 1e-12);
}
