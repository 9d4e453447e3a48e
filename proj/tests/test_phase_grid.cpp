#include <doctest.h>

#include <cmath>

#include "hhq/phase_grid.hpp"
#include "hhq/types.hpp"

using hhq::cplx;
using hhq::phase_grid;

TEST_CASE("axis geometry: m = floor(radius/step), 2m+1 points, symmetric offsets") {
    phase_grid g;
    g.center = cplx{0.3, -0.2};
    g.radius = 1.0;
    g.step = 0.25;
    hhq::validate(g);
    CHECK(hhq::grid_half_points(g) == 4);
    CHECK(hhq::grid_axis_points(g) == 9);
    CHECK(hhq::grid_axis_offset(g, 0) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(hhq::grid_axis_offset(g, 4) == 0.0);
    CHECK(hhq::grid_axis_offset(g, 8) == doctest::Approx(1.0).epsilon(1e-15));
    // offsets are mirror images
    for (std::size_t k = 0; k <= 8; ++k)
        CHECK(hhq::grid_axis_offset(g, k) == -hhq::grid_axis_offset(g, 8 - k));
}

TEST_CASE("trapezoid weights: step/2 at the ends, step inside, total 2*radius-ish") {
    phase_grid g;
    g.radius = 1.5;
    g.step = 0.5;
    const std::size_t n = hhq::grid_axis_points(g);
    CHECK(hhq::grid_axis_weight(g, 0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(hhq::grid_axis_weight(g, n - 1) == doctest::Approx(0.25).epsilon(1e-15));
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (k != 0 && k != n - 1)
            CHECK(hhq::grid_axis_weight(g, k) == doctest::Approx(0.5).epsilon(1e-15));
        total += hhq::grid_axis_weight(g, k);
    }
    // trapezoid over [-r, r] integrates constants exactly
    CHECK(total == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("radius definition is inclusive of the rounded boundary point") {
    // 0.6 / 0.2 is the classic 3*step == radius case that binary rounding
    // would otherwise reject
    phase_grid g;
    g.radius = 0.6;
    g.step = 0.2;
    CHECK_NOTHROW(hhq::validate(g));
    CHECK(hhq::grid_half_points(g) == 3);
}

TEST_CASE("validate rejects bad geometry") {
    phase_grid g;
    g.radius = 1.0;
    g.step = 0.0;
    CHECK_THROWS_AS(hhq::validate(g), hhq::precondition_error);
    g.step = -0.1;
    CHECK_THROWS_AS(hhq::validate(g), hhq::precondition_error);
    g.step = 0.4;  // radius < 3*step
    CHECK_THROWS_AS(hhq::validate(g), hhq::precondition_error);
    g.step = 0.2;
    g.center = cplx{std::nan(""), 0.0};
    CHECK_THROWS_AS(hhq::validate(g), hhq::precondition_error);
}

TEST_CASE("validate rejects a values buffer of the wrong length") {
    phase_grid g;
    g.radius = 1.0;
    g.step = 0.25;
    g.values.assign(10, 0.0);  // should be 9*9 = 81
    CHECK_THROWS_AS(hhq::validate(g), hhq::precondition_error);
    g.values.assign(81, 0.0);
    CHECK_NOTHROW(hhq::validate(g));
}
