#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyring/model.hpp"
#include "polyring/spectra.hpp"

namespace polyring {

struct SignReport {
    std::vector<int> per_polygon;  // sign of each polygon mass: -1, 0, +1
    // Two-polygon planar context: the threshold radius for the outer polygon
    // and whether the inner radius lies below it (same-sign region).
    std::optional<double> delta;
    std::optional<bool> inner_below_delta;
};

struct MassSolution {
    std::vector<double> per_polygon_masses;  // common mass of each polygon
    double nu = 0.0;
    double total_mass = 0.0;      // N * sum of per-polygon masses
    double residual = 0.0;        // defining-equation max defect (via verify)
    double b_mode_residual = 0.0; // height-system mode-N defect; 0 when planar
    bool consistent = true;       // both residuals within tolerance
    SignReport signs;

    // Expansion to one mass per body (constant on each polygon).
    std::vector<double> body_masses(int vertices) const;
};

// Solves the all-ones-mode system [lambda_N(A_ts)] x = nu^2 r for the unique
// per-polygon masses of a planar stack. The mode-N matrix carries no nu^2/M
// term, so no fixed-point iteration over the total mass is needed; M is
// computed afterwards. Throws NumericallySingularError (carrying the
// determinant) when the matrix fails the relative threshold or the condition
// estimate exceeds 1e12.
MassSolution solve_equal_masses(const PolygonStack& stack, double nu);

// Closed-form two-polygon masses by Cramer quotients; agrees with
// solve_equal_masses to rounding and exposes the sign structure directly.
std::pair<double, double> cramer_two_polygon(double r1, double r2, double nu, int n, double a);

// The threshold radius delta in (0, r2): masses share the sign of nu^2 for
// inner radius below delta, and have opposite signs above it. Found by
// bisection on g(r1) = xi_N(r1) r2 - r1 f_N(r2, r1), which decreases
// monotonically from +inf to -inf.
double mass_sign_threshold(double r2, int n, double a);

// Non-planar candidate masses from the in-plane mode-N system, then a
// consistency check of the height system at the candidate nu^2/M and of the
// full 3D defining equation. Solvability of the in-plane system is necessary
// but not sufficient, so an inconsistent height system yields a candidate
// with residuals, not an error.
MassSolution solve_nonplanar(const PolygonStack& stack, double nu);

// Height-system mode-N determinant at a given nu^2/M (two-polygon analysis).
double b_mode_n_determinant(const PolygonStack& stack, double nu2_over_m);

enum class ExclusionReason { none, complex_eigenvector_mode, odd_polygon_count_b_family };

struct ModeVerdict {
    int p = 0;
    double det_a = 0.0;
    DetVerdict verdict_a = DetVerdict::nonzero;
    std::optional<double> reduced_a;
    std::optional<double> det_b;           // non-planar stacks, p < N
    std::optional<DetVerdict> verdict_b;
    ExclusionReason reason = ExclusionReason::none;
    std::string annotation;
};

// Per-mode determinants and the reasons a mode cannot carry real masses:
// mode N-1 has no real eigenvector combination, and for a single polygon
// with odd N the middle mode can be singular (exactly so at a = 2).
struct ModeExclusionReport {
    std::vector<ModeVerdict> modes;  // p = 1..N
};

ModeExclusionReport mode_exclusion_report(const PolygonStack& stack);

}  // namespace polyring
