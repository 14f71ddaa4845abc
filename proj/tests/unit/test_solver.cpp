#include <doctest.h>

#include <cmath>
#include <random>

#include "polyring/errors.hpp"
#include "polyring/solver.hpp"
#include "polyring/spectra.hpp"
#include "polyring/verify.hpp"

using namespace polyring;

TEST_CASE("single square at unit radius") {
    const auto stack = PolygonStack::planar_stack(4, {1.0}, 3.0);
    const auto solution = solve_equal_masses(stack, 1.0);
    // nu^2 r / xi_N(r) with xi = (1 + 2 sqrt 2)/4.
    CHECK(solution.per_polygon_masses[0] ==
          doctest::Approx(4.0 / (1.0 + 2.0 * std::sqrt(2.0))).epsilon(1e-13));
    CHECK(solution.residual < 1e-12);
    CHECK(solution.total_mass == doctest::Approx(4.0 * solution.per_polygon_masses[0]));
}

TEST_CASE("nu = 0 gives the zero solution") {
    const auto solution = solve_equal_masses(PolygonStack::planar_stack(5, {1.0, 2.0}, 2.0), 0.0);
    CHECK(solution.per_polygon_masses[0] == 0.0);
    CHECK(solution.per_polygon_masses[1] == 0.0);
    CHECK(solution.residual == 0.0);
}

TEST_CASE("two nested squares solve and verify") {
    const auto stack = PolygonStack::planar_stack(4, {1.0, 2.0}, 3.0);
    const auto solution = solve_equal_masses(stack, 1.0);
    CHECK(solution.residual < 1e-10);
    CHECK(solution.signs.per_polygon[0] == 1);
    CHECK(solution.signs.per_polygon[1] == 1);
    REQUIRE(solution.signs.delta.has_value());
    // delta scales linearly: r2 = 2 doubles the unit-radius threshold.
    CHECK(*solution.signs.delta ==
          doctest::Approx(2.0 * mass_sign_threshold(1.0, 4, 3.0)).epsilon(1e-9));
    CHECK(*solution.signs.inner_below_delta);

    const auto [m1, m2] = cramer_two_polygon(1.0, 2.0, 1.0, 4, 3.0);
    CHECK(m1 == doctest::Approx(solution.per_polygon_masses[0]).epsilon(1e-12));
    CHECK(m2 == doctest::Approx(solution.per_polygon_masses[1]).epsilon(1e-12));
}

TEST_CASE("solution scales linearly in nu^2 and as lambda^a under radius scaling") {
    const auto stack = PolygonStack::planar_stack(5, {1.0, 3.0}, 2.5);
    const auto base = solve_equal_masses(stack, 1.0);
    const auto doubled = solve_equal_masses(stack, std::sqrt(2.0));
    for (int t = 0; t < 2; ++t) {
        CHECK(doubled.per_polygon_masses[t] ==
              doctest::Approx(2.0 * base.per_polygon_masses[t]).epsilon(1e-12));
    }

    const double lambda = 1.7;
    auto scaled_stack = stack;
    for (auto& r : scaled_stack.radii) r *= lambda;
    const auto scaled = solve_equal_masses(scaled_stack, 1.0);
    for (int t = 0; t < 2; ++t) {
        CHECK(scaled.per_polygon_masses[t] ==
              doctest::Approx(std::pow(lambda, 2.5) * base.per_polygon_masses[t])
                  .epsilon(1e-10));
    }
}

TEST_CASE("cramer route") {
    SUBCASE("m1 takes the sign of nu^2 on the inner polygon") {
        for (int n = 3; n <= 8; ++n) {
            for (double a : {2.0, 3.0}) {
                for (int i = 1; i <= 9; ++i) {
                    const double r1 = i / 10.0;
                    const auto [m1, m2] = cramer_two_polygon(r1, 1.0, 1.4, n, a);
                    CHECK(m1 > 0.0);
                }
            }
        }
    }
    SUBCASE("nu = 0 gives zero masses") {
        const auto [m1, m2] = cramer_two_polygon(0.5, 1.0, 0.0, 4, 3.0);
        CHECK(m1 == 0.0);
        CHECK(m2 == 0.0);
    }
    SUBCASE("equal radii are singular") {
        CHECK_THROWS_AS(cramer_two_polygon(1.0, 1.0, 1.0, 4, 3.0), SingularGeometryError);
    }
}

TEST_CASE("mass sign threshold") {
    // Independent anchor: bisection value confirmed by a dense scan of the
    // closed-form masses.
    const double delta = mass_sign_threshold(1.0, 4, 3.0);
    CHECK(delta == doctest::Approx(0.53178607402).epsilon(1e-8));

    SUBCASE("signs flip across delta") {
        for (int n = 3; n <= 7; ++n) {
            for (double a : {2.0, 3.0}) {
                const double d = mass_sign_threshold(1.0, n, a);
                const auto below = cramer_two_polygon(d * 0.999, 1.0, 1.0, n, a);
                CHECK(below.first * below.second > 0.0);
                const auto above = cramer_two_polygon(d * 1.001, 1.0, 1.0, n, a);
                CHECK(above.first * above.second < 0.0);
            }
        }
    }
    SUBCASE("g decreases monotonically") {
        const int n = 5;
        const double a = 3.0;
        double prev = xi_p(0.01, n, a, n) * 1.0 - 0.01 * f_p(1.0, 0.01, n, a, n);
        for (int i = 2; i <= 90; ++i) {
            const double r1 = i / 100.0;
            const double g = xi_p(r1, n, a, n) * 1.0 - r1 * f_p(1.0, r1, n, a, n);
            CHECK(g < prev);
            prev = g;
        }
    }
    SUBCASE("delta scales linearly with the outer radius") {
        CHECK(mass_sign_threshold(3.5, 5, 2.0) ==
              doctest::Approx(3.5 * mass_sign_threshold(1.0, 5, 2.0)).epsilon(1e-9));
    }
}

TEST_CASE("non-planar solve") {
    SUBCASE("uniform heights reduce to the planar solution") {
        const auto planar = solve_equal_masses(PolygonStack::planar_stack(4, {1.0, 2.0}, 3.0), 1.0);
        const auto lifted = solve_nonplanar(
            PolygonStack::spatial_stack(4, {1.0, 2.0}, {1.5, 1.5}, 3.0), 1.0);
        CHECK(lifted.per_polygon_masses[0] ==
              doctest::Approx(planar.per_polygon_masses[0]).epsilon(1e-14));
        CHECK(lifted.per_polygon_masses[1] ==
              doctest::Approx(planar.per_polygon_masses[1]).epsilon(1e-14));
        CHECK(lifted.b_mode_residual < 1e-12);
        CHECK(lifted.residual < 1e-10);
        CHECK(lifted.consistent);
    }
    SUBCASE("height-system determinant is positive with a grounded inner polygon") {
        for (double a : {2.0, 3.0, 4.0}) {
            const auto stack = PolygonStack::spatial_stack(4, {1.0, 3.0}, {0.0, 2.0}, a);
            const auto solution = solve_nonplanar(stack, 1.0);
            const double det =
                b_mode_n_determinant(stack, 1.0 / solution.total_mass);
            CHECK(det > 0.0);
        }
    }
    SUBCASE("generic instance reports both residuals") {
        const auto stack = PolygonStack::spatial_stack(4, {1.0, 3.0}, {0.25, 2.0}, 3.0);
        const auto solution = solve_nonplanar(stack, 1.0);
        CHECK(solution.b_mode_residual > 0.0);
        CHECK(std::isfinite(solution.residual));
        // The in-plane system is satisfied; the defining-equation defect is
        // exactly the height defect, which the mode-N residual reproduces.
        CHECK(solution.residual ==
              doctest::Approx(solution.b_mode_residual).epsilon(1e-9));
        CHECK_FALSE(solution.consistent);
    }
}

TEST_CASE("solve rejects bad inputs") {
    CHECK_THROWS_AS(
        solve_equal_masses(PolygonStack::spatial_stack(4, {1.0, 2.0}, {0.0, 1.0}, 3.0), 1.0),
        InvalidInstanceError);
}

TEST_CASE("mode exclusion report") {
    SUBCASE("two planar squares") {
        const auto report =
            mode_exclusion_report(PolygonStack::planar_stack(4, {1.0, 2.0}, 3.0));
        REQUIRE(report.modes.size() == 4);
        for (const auto& row : report.modes) {
            if (row.p == 3) {
                CHECK(row.reason == ExclusionReason::complex_eigenvector_mode);
            } else {
                CHECK(row.reason == ExclusionReason::none);
                CHECK(row.det_a > 0.0);
                CHECK(row.verdict_a == DetVerdict::nonzero);
            }
        }
    }
    SUBCASE("three stacked polygons have structurally-zero height determinants") {
        const auto report = mode_exclusion_report(
            PolygonStack::spatial_stack(5, {1.0, 2.0, 4.0}, {0.0, 1.0, 2.0}, 3.0));
        for (const auto& row : report.modes) {
            if (row.p == 5) continue;
            REQUIRE(row.verdict_b.has_value());
            CHECK(*row.verdict_b == DetVerdict::structurally_zero);
            if (row.p != 4) {
                CHECK(row.reason == ExclusionReason::odd_polygon_count_b_family);
            }
        }
    }
    SUBCASE("single odd polygon at a=2 has a singular middle mode") {
        const auto report = mode_exclusion_report(PolygonStack::planar_stack(5, {1.0}, 2.0));
        const auto& middle = report.modes[1];  // p = 2 = (N-1)/2
        CHECK(middle.p == 2);
        CHECK(std::abs(middle.det_a) < 1e-14);
        CHECK(middle.verdict_a == DetVerdict::numerically_singular);
        CHECK_FALSE(middle.annotation.empty());
    }
}
