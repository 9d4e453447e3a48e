#include <doctest.h>

#include <complex>
#include <numeric>
#include <random>
#include <vector>

#include "hhq/parallel.hpp"

using hhq::pairwise_sum;

TEST_CASE("pairwise_sum handles empty and single-element buffers") {
    CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
    CHECK(pairwise_sum(std::vector<double>{42.0}) == 42.0);
}

TEST_CASE("pairwise_sum is exact on integers for every length") {
    for (std::size_t n = 1; n <= 67; ++n) {
        std::vector<double> v(n);
        std::iota(v.begin(), v.end(), 1.0);
        CHECK(pairwise_sum(v) == 0.5 * static_cast<double>(n) * static_cast<double>(n + 1));
    }
}

TEST_CASE("pairwise_sum agrees with naive summation to roundoff") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> v(10001);
    for (auto& x : v) x = uni(rng);
    const double naive = std::accumulate(v.begin(), v.end(), 0.0);
    const double tree = pairwise_sum(v);
    CHECK(std::abs(tree - naive) < 1e-11);
}

TEST_CASE("pairwise_sum works on complex buffers") {
    std::vector<std::complex<double>> v{{1.0, 2.0}, {3.0, -4.0}, {-0.5, 0.25}};
    const auto s = pairwise_sum(v);
    CHECK(s.real() == doctest::Approx(3.5).epsilon(1e-15));
    CHECK(s.imag() == doctest::Approx(-1.75).epsilon(1e-15));
}

TEST_CASE("pairwise_sum result depends only on element order, not call site") {
    // fixed tree: same data, same result, bit for bit
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<double> v(777);
    for (auto& x : v) x = uni(rng);
    const double a = pairwise_sum(v);
    const double b = pairwise_sum(v);
    CHECK(a == b);
}
