#include "polyring/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "polyring/errors.hpp"
#include "polyring/linalg.hpp"
#include "polyring/verify.hpp"

namespace polyring {

namespace {

constexpr double kConditionLimit = 1e12;
constexpr double kConsistencyTol = 1e-9;

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// Shared core: solve the mode-N in-plane system (which never carries a
// nu^2/M contribution) and attach diagnostics.
MassSolution solve_mode_n(const PolygonStack& stack, double nu) {
    stack.validate();
    const int l = stack.polygons();
    const ModeMatrix mode_n = mode_matrix(stack, stack.vertices, Family::A, 0.0);
    std::vector<double> rhs(l);
    for (int t = 0; t < l; ++t) rhs[t] = nu * nu * stack.radii[t];

    LinearSolution lin = solve_dense(mode_n.entries, rhs);
    if (determinant_verdict(mode_n, lin.determinant) != DetVerdict::nonzero ||
        lin.condition > kConditionLimit) {
        throw NumericallySingularError(
            "mode-N system is numerically singular (det = " + std::to_string(lin.determinant) +
                ", cond = " + std::to_string(lin.condition) + "): no unique mass solution",
            lin.determinant);
    }

    MassSolution solution;
    solution.per_polygon_masses = std::move(lin.x);
    solution.nu = nu;
    double sum = 0.0;
    for (double m : solution.per_polygon_masses) sum += m;
    solution.total_mass = stack.vertices * sum;

    solution.signs.per_polygon.resize(l);
    for (int t = 0; t < l; ++t) solution.signs.per_polygon[t] = sign_of(solution.per_polygon_masses[t]);
    if (l == 2 && stack.planar()) {
        const double inner = std::min(stack.radii[0], stack.radii[1]);
        const double outer = std::max(stack.radii[0], stack.radii[1]);
        const double delta = mass_sign_threshold(outer, stack.vertices, stack.exponent);
        solution.signs.delta = delta;
        solution.signs.inner_below_delta = inner < delta;
    }

    const Configuration config = build_positions(stack);
    MassAssignment assignment{solution.body_masses(stack.vertices), nu};
    solution.residual = cc_residual(config, assignment, stack.exponent).max_residual;
    return solution;
}

double consistency_scale(const PolygonStack& stack, double nu) {
    double scale = 1.0;
    for (int t = 0; t < stack.polygons(); ++t) {
        scale = std::max(scale, std::abs(nu * nu * stack.radii[t]));
        scale = std::max(scale, std::abs(nu * nu * stack.heights[t]));
    }
    return scale;
}

}  // namespace

std::vector<double> MassSolution::body_masses(int vertices) const {
    std::vector<double> expanded;
    expanded.reserve(per_polygon_masses.size() * vertices);
    for (double m : per_polygon_masses) {
        expanded.insert(expanded.end(), vertices, m);
    }
    return expanded;
}

MassSolution solve_equal_masses(const PolygonStack& stack, double nu) {
    stack.validate();
    if (!stack.planar()) {
        throw InvalidInstanceError("solve_equal_masses handles planar stacks; "
                                   "use solve_nonplanar for stacked heights");
    }
    MassSolution solution = solve_mode_n(stack, nu);
    solution.b_mode_residual = 0.0;
    solution.consistent = solution.residual <= kConsistencyTol * consistency_scale(stack, nu);
    return solution;
}

std::pair<double, double> cramer_two_polygon(double r1, double r2, double nu, int n, double a) {
    if (!(r1 > 0.0 && r2 > 0.0)) {
        throw InvalidInstanceError("cramer_two_polygon needs positive radii");
    }
    if (r1 == r2) {
        throw SingularGeometryError("cramer_two_polygon is undefined at equal radii");
    }
    const double nu2 = nu * nu;
    const double xi1 = xi_p(r1, n, a, n);
    const double xi2 = xi_p(r2, n, a, n);
    const double f12 = f_p(r1, r2, n, a, n);
    const double f21 = f_p(r2, r1, n, a, n);
    const double den = xi1 * xi2 - f12 * f21;
    if (!(den > 0.0)) {
        throw NumericallySingularError(
            "two-polygon mode-N determinant is not positive (det = " + std::to_string(den) + ")",
            den);
    }
    const double m1 = (r1 * nu2 * xi2 - r2 * nu2 * f12) / den;
    const double m2 = (xi1 * r2 * nu2 - f21 * r1 * nu2) / den;
    return {m1, m2};
}

double mass_sign_threshold(double r2, int n, double a) {
    if (!(r2 > 0.0)) throw InvalidInstanceError("mass_sign_threshold needs r2 > 0");
    const auto g = [&](double r1) { return xi_p(r1, n, a, n) * r2 - r1 * f_p(r2, r1, n, a, n); };

    double lo = 1e-8 * r2;
    double hi = (1.0 - 1e-8) * r2;
    // g decreases from +inf at 0+ to -inf at r2-, but both limits are only
    // valid in the open interval; if an endpoint evaluation lands on the
    // wrong side (or NaN), move that bracket inward and retry.
    while (!(g(lo) > 0.0)) {
        lo *= 2.0;
        if (lo >= hi) {
            throw NumericallySingularError(
                "mass_sign_threshold: no positive bracket inside (0, r2)", g(lo));
        }
    }
    while (!(g(hi) < 0.0)) {
        hi = r2 - 2.0 * (r2 - hi);
        if (hi <= lo) {
            throw NumericallySingularError(
                "mass_sign_threshold: no negative bracket inside (0, r2)", g(hi));
        }
    }
    while (hi - lo > 1e-10 * lo) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double b_mode_n_determinant(const PolygonStack& stack, double nu2_over_m) {
    return mode_determinant(stack, stack.vertices, Family::B, nu2_over_m).value;
}

MassSolution solve_nonplanar(const PolygonStack& stack, double nu) {
    stack.validate();
    MassSolution solution = solve_mode_n(stack, nu);

    const int l = stack.polygons();
    const double nu2 = nu * nu;
    double nu2_over_m = 0.0;
    if (solution.total_mass != 0.0) {
        nu2_over_m = nu2 / solution.total_mass;
    } else if (nu2 != 0.0) {
        throw ZeroTotalMassError("non-planar consistency check needs nonzero total mass "
                                 "when nu is nonzero");
    }

    const ModeMatrix b_mode = mode_matrix(stack, stack.vertices, Family::B, nu2_over_m);
    double b_defect = 0.0;
    for (int t = 1; t <= l; ++t) {
        double row = 0.0;
        for (int s = 1; s <= l; ++s) row += b_mode.at(t, s) * solution.per_polygon_masses[s - 1];
        b_defect = std::max(b_defect, std::abs(row - nu2 * stack.heights[t - 1]));
    }
    solution.b_mode_residual = b_defect;

    const double tol = kConsistencyTol * consistency_scale(stack, nu);
    solution.consistent = solution.residual <= tol && solution.b_mode_residual <= tol;
    return solution;
}

ModeExclusionReport mode_exclusion_report(const PolygonStack& stack) {
    stack.validate();
    const int n = stack.vertices;
    const int l = stack.polygons();
    const bool planar = stack.planar();

    ModeExclusionReport report;
    report.modes.reserve(n);
    for (int p = 1; p <= n; ++p) {
        ModeVerdict row;
        row.p = p;
        const ModeDeterminant det_a = mode_determinant(stack, p, Family::A, 0.0);
        row.det_a = det_a.value;
        row.verdict_a = det_a.verdict;
        row.reduced_a = det_a.reduced;

        if (!planar && p != n) {
            const ModeDeterminant det_b = mode_determinant(stack, p, Family::B, 0.0);
            row.det_b = det_b.value;
            row.verdict_b = det_b.verdict;
            if (det_b.verdict == DetVerdict::structurally_zero) {
                row.reason = ExclusionReason::odd_polygon_count_b_family;
                row.annotation = "height-system matrix is skew-symmetric of odd order; "
                                 "its determinant vanishes identically";
            }
        }

        if (p == n - 1) {
            row.reason = ExclusionReason::complex_eigenvector_mode;
            row.annotation = "no real combination of this eigenvector family exists for N > 2; "
                             "the mode cannot carry real masses";
        } else if (l == 1 && n % 2 == 1 && p == (n - 1) / 2) {
            row.annotation = "middle mode of a single odd polygon: xi vanishes exactly at "
                             "a = 2, and no real mass vector combines it with mode N-1 "
                             "unless N = 3";
        }
        report.modes.push_back(std::move(row));
    }
    return report;
}

}  // namespace polyring
