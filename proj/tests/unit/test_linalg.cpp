#include <doctest.h>

#include <cmath>
#include <random>

#include "polyring/linalg.hpp"

using namespace polyring;

TEST_CASE("known 2x2 system") {
    const auto sol = solve_dense({2.0, 1.0, 1.0, 3.0}, {5.0, 10.0});
    CHECK(sol.x[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sol.x[1] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(sol.determinant == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(sol.condition >= 1.0);
}

TEST_CASE("random systems satisfy their equations") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> value(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 8);
        std::vector<double> m(n * n), rhs(n);
        for (auto& v : m) v = value(rng);
        for (auto& v : rhs) v = value(rng);
        const auto sol = solve_dense(m, rhs);
        if (!std::isfinite(sol.condition) || sol.condition > 1e12) continue;
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += m[i * n + j] * sol.x[j];
            CHECK(acc == doctest::Approx(rhs[i]).epsilon(1e-9));
        }
    }
}

TEST_CASE("3x3 determinant matches cofactor expansion") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> value(-2.0, 2.0);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> m(9);
        for (auto& v : m) v = value(rng);
        const double cofactor = m[0] * (m[4] * m[8] - m[5] * m[7]) -
                                m[1] * (m[3] * m[8] - m[5] * m[6]) +
                                m[2] * (m[3] * m[7] - m[4] * m[6]);
        CHECK(determinant_dense(m, 3) == doctest::Approx(cofactor).epsilon(1e-12));
    }
}

TEST_CASE("exactly singular matrices are flagged, not solved") {
    const auto sol = solve_dense({1.0, 2.0, 2.0, 4.0}, {1.0, 2.0});
    CHECK(sol.determinant == 0.0);
    CHECK(std::isinf(sol.condition));
}

TEST_CASE("condition estimate recognizes near-singular systems") {
    const double eps = 1e-13;
    const auto sol = solve_dense({1.0, 1.0, 1.0, 1.0 + eps}, {1.0, 1.0});
    CHECK(sol.condition > 1e12);
}
