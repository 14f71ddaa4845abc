// Acceptance suite: one criterion per check, one PASS/FAIL line each, exit
// code = number of failures. Each check carries its tolerance inline; the
// oracles here (dense projections, convolution products, dense sign scans)
// are deliberately independent of the library's closed-form paths.
#include <omp.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "polyring/circulant.hpp"
#include "polyring/dynamics.hpp"
#include "polyring/model.hpp"
#include "polyring/scan.hpp"
#include "polyring/series.hpp"
#include "polyring/solver.hpp"
#include "polyring/spectra.hpp"
#include "polyring/verify.hpp"

using namespace polyring;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::string detail;
};

// ---------------------------------------------------------------- 1 -------
Outcome circulant_oracle() {
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> value(-3.0, 3.0);
    std::uniform_int_distribution<int> order(3, 16);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = order(rng);
        CirculantMatrix m;
        m.first_row.resize(n);
        for (auto& c : m.first_row) c = {value(rng), value(rng)};
        const auto dense = dense_circulant_eigen(m);
        for (int p = 1; p <= n; ++p) {
            worst = std::max(worst, std::abs(circulant_eigenvalue(m, p) - dense[p - 1]));
        }
    }
    std::ostringstream detail;
    detail << "100 random matrices, N in 3..16, max |formula - projection| = " << worst;
    return {worst <= 1e-10, detail.str()};
}

// ---------------------------------------------------------------- 2 -------
Outcome determinant_positivity() {
    const double t0 = omp_get_wtime();
    int checked = 0, violations = 0;
    double min_det = 1e300;
    for (int n = 3; n <= 10; ++n) {
        for (double a : {2.0, 2.5, 3.0, 4.0}) {
            for (int i = 0; i < 50; ++i) {
                const double x = 0.05 + 0.9 * (i + 0.5) / 50.0;
                const auto stack = PolygonStack::planar_stack(n, {1.0, x}, a);
                for (int p = 1; p <= n; ++p) {
                    if (p == n - 1) continue;
                    const auto det = mode_determinant(stack, p, Family::A, 0.0);
                    ++checked;
                    min_det = std::min(min_det, det.value);
                    if (!(det.value > 0.0) || det.verdict != DetVerdict::nonzero) ++violations;
                }
            }
        }
    }
    const double elapsed = omp_get_wtime() - t0;
    std::ostringstream detail;
    detail << checked << " determinants, violations = " << violations
           << ", min det = " << min_det << ", runtime " << elapsed << " s (< 60 required)";
    return {violations == 0 && elapsed < 60.0, detail.str()};
}

// ---------------------------------------------------------------- 3 -------
Outcome f_sign_and_series_bracket() {
    int violations = 0;
    for (int n = 3; n <= 10; ++n) {
        for (double a : {2.0, 2.5, 3.0, 4.0}) {
            for (int i = 0; i < 50; ++i) {
                const double x = 0.05 + 0.9 * (i + 0.5) / 50.0;
                for (int p = 1; p <= n; ++p) {
                    if (!(f_p(x, 1.0, n, a, p) < 0.0)) ++violations;
                }
            }
        }
    }
    double worst_gap = 0.0;
    bool bracketed = true;
    for (int p = 1; p <= 4; ++p) {
        for (double x : {0.1, 0.4, 0.7}) {
            const auto sv = series_eval(p, 4, 3.0, x, 100);
            const double gap = std::abs(sv.value - f_p(x, 1.0, 4, 3.0, p));
            worst_gap = std::max(worst_gap, gap);
            if (gap > sv.tail_bound) bracketed = false;
        }
    }
    std::ostringstream detail;
    detail << "sign violations = " << violations
           << "; series vs direct sum (N=4, a=3, order 100): max gap = " << worst_gap
           << (bracketed ? ", inside the tail bound" : ", OUTSIDE the tail bound");
    return {violations == 0 && bracketed && worst_gap < 1e-8, detail.str()};
}

// ---------------------------------------------------------------- 4 -------
double beta_convolution_oracle(int order_n, int p, int n, double a) {
    const long double theta = 2.0L * std::numbers::pi_v<long double> / n;
    std::vector<long double> alpha(order_n + 1);
    alpha[0] = 1.0L;
    for (int k = 1; k <= order_n; ++k) alpha[k] = alpha[k - 1] * (a / 2.0L + k - 1) / k;
    long double value = 0.0L;
    for (int j = 1; j <= n; ++j) {
        long double k_prev = 0.0L, k_cur = 0.0L;
        for (int k = 0; k <= order_n; ++k) {
            const int l = order_n - k;
            k_cur += alpha[k] * alpha[l] * std::cos(theta * j * (k - l));
            if (k <= order_n - 1) {
                k_prev +=
                    alpha[k] * alpha[order_n - 1 - k] * std::cos(theta * j * (2 * k - (order_n - 1)));
            }
        }
        if (order_n >= 1) value += std::cos(theta * j * p) * k_prev;
        value -= std::cos(theta * j * (p + 1)) * k_cur;
    }
    return static_cast<double>(value);
}

Outcome series_certification() {
    // The oracle agreement tolerance is 1e-12 relative to the coefficient
    // envelope 4N(n+1) alpha_n alpha_{n/2}: the coefficients themselves reach
    // ~1e6 at N=12, a=4, n=100, far beyond any absolute 1e-12 in doubles.
    int sign_violations = 0, oracle_violations = 0;
    double worst_rel = 0.0, max_beta = -1e300;
    for (int n = 3; n <= 12; ++n) {
        for (double a : {2.0, 2.5, 3.0, 4.0}) {
            const auto alpha = alpha_table(101, a);
            for (int p = 1; p <= n; ++p) {
                const auto betas = beta_table(100, p, n, a);
                for (int m = 0; m <= 100; ++m) {
                    max_beta = std::max(max_beta, betas[m]);
                    if (betas[m] > 1e-12) ++sign_violations;
                    const double envelope =
                        std::max(1.0, 4.0 * n * (m + 1) * alpha[m] * alpha[(m + 1) / 2]);
                    const double rel =
                        std::abs(betas[m] - beta_convolution_oracle(m, p, n, a)) / envelope;
                    worst_rel = std::max(worst_rel, rel);
                    if (rel > 1e-12) ++oracle_violations;
                }
            }
        }
    }
    std::ostringstream detail;
    detail << "N in 3..12, p in 1..N, a in {2,2.5,3,4}, n <= 100: max beta = " << max_beta
           << " (<= 1e-12), sign violations = " << sign_violations
           << ", max envelope-relative oracle gap = " << worst_rel
           << " (<= 1e-12), oracle violations = " << oracle_violations;
    return {sign_violations == 0 && oracle_violations == 0, detail.str()};
}

// ---------------------------------------------------------------- 5 -------
Outcome xi_closed_form() {
    double worst = 0.0;
    for (int n = 3; n <= 12; ++n) {
        for (int p = 1; p <= n; ++p) {
            const double expected = (n - (2.0 * (p % n) + 1.0)) / 2.0;
            worst = std::max(worst, std::abs(xi_p(1.0, n, 2.0, p) - expected));
        }
    }
    std::ostringstream detail;
    detail << "a=2, N in 3..12, all p (indices mod N): max |xi - (N-(2p+1))/2| = " << worst;
    return {worst <= 1e-12, detail.str()};
}

// ---------------------------------------------------------------- 6 -------
Outcome inverse_solve_residual() {
    std::mt19937 rng(606);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_residual = 0.0, worst_cramer = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int l = 1 + static_cast<int>(rng() % 2);
        const int n = 3 + static_cast<int>(rng() % 6);
        const double a = rng() % 2 == 0 ? 2.0 : 3.0;
        const double nu = 2.0 * (1e-3 + 0.999 * unit(rng));
        const double r1 = 0.5 + 1.5 * unit(rng);
        std::vector<double> radii{r1};
        if (l == 2) radii.push_back(r1 * (1.2 + 8.8 * unit(rng)));
        const auto stack = PolygonStack::planar_stack(n, radii, a);
        const auto solution = solve_equal_masses(stack, nu);
        worst_residual = std::max(worst_residual, solution.residual);
        if (l == 2) {
            const auto [m1, m2] = cramer_two_polygon(radii[0], radii[1], nu, n, a);
            const double gap1 =
                std::abs(m1 - solution.per_polygon_masses[0]) / std::max(1.0, std::abs(m1));
            const double gap2 =
                std::abs(m2 - solution.per_polygon_masses[1]) / std::max(1.0, std::abs(m2));
            worst_cramer = std::max({worst_cramer, gap1, gap2});
        }
    }
    std::ostringstream detail;
    detail << "50 random planar instances: max defining-equation residual = " << worst_residual
           << " (< 1e-10), max Cramer gap = " << worst_cramer << " (< 1e-12, relative)";
    return {worst_residual < 1e-10 && worst_cramer < 1e-12, detail.str()};
}

// ---------------------------------------------------------------- 7 -------
Outcome sign_threshold() {
    bool ok = true;
    std::ostringstream detail;
    double worst_cell_gap = 0.0;
    for (int n = 3; n <= 8; ++n) {
        for (double a : {2.0, 3.0}) {
            const double delta = mass_sign_threshold(1.0, n, a);
            const auto below = cramer_two_polygon(0.999 * delta, 1.0, 1.0, n, a);
            const auto above = cramer_two_polygon(1.001 * delta, 1.0, 1.0, n, a);
            if (!(below.first * below.second > 0.0)) ok = false;
            if (!(above.first * above.second < 0.0)) ok = false;

            // Dense oracle: 10^4-point scan of the closed-form m2 sign.
            const int points = 10000;
            const double lo = 1e-4, hi = 1.0 - 1e-4;
            const double cell = (hi - lo) / (points - 1);
            double crossing = -1.0;
            double prev_m2 = cramer_two_polygon(lo, 1.0, 1.0, n, a).second;
            for (int i = 1; i < points; ++i) {
                const double r1 = lo + cell * i;
                const double m2 = cramer_two_polygon(r1, 1.0, 1.0, n, a).second;
                if (prev_m2 > 0.0 && m2 <= 0.0) {
                    crossing = r1;
                    break;
                }
                prev_m2 = m2;
            }
            if (crossing < 0.0) {
                ok = false;
                continue;
            }
            const double gap = std::abs(delta - (crossing - 0.5 * cell));
            worst_cell_gap = std::max(worst_cell_gap, gap / cell);
            if (gap > cell) ok = false;
        }
    }
    detail << "N in 3..8, a in {2,3}, r2=1: signs flip at 0.999/1.001 delta; "
           << "max |delta - scan crossing| = " << worst_cell_gap << " cells (<= 1)";
    return {ok, detail.str()};
}

// ---------------------------------------------------------------- 8 -------
Outcome dynamics_drift() {
    bool ok = true;
    std::ostringstream detail;

    const auto stack3 = PolygonStack::planar_stack(4, {1.0, 2.0}, 3.0);
    const auto sol3 = solve_equal_masses(stack3, 1.0);
    const auto state3 = init_rotating(build_positions(stack3), sol3, 3.0);
    const MassAssignment masses3{sol3.body_masses(4), sol3.nu};
    const double period3 = kTwoPi / sol3.nu;
    const auto traj3 = integrate(state3, masses3, 3.0, period3 / 20000.0, 40000, 200);
    const auto rep3 = drift_report(traj3, masses3, 3.0);
    if (!(rep3.max_relative_distance_drift < 1e-6)) ok = false;
    if (!(rep3.first_invariant_drift < 1e-8 && rep3.second_invariant_drift < 1e-8)) ok = false;

    const auto stack2 = PolygonStack::planar_stack(4, {1.0, 2.0}, 2.0);
    const auto sol2 = solve_equal_masses(stack2, 1.0);
    const auto state2 = init_rotating(build_positions(stack2), sol2, 2.0);
    const MassAssignment masses2{sol2.body_masses(4), sol2.nu};
    const double period2 = kTwoPi / (sol2.nu * sol2.nu);
    const auto traj2 = integrate(state2, masses2, 2.0, period2 / 20000.0, 40000, 200);
    const auto rep2 = drift_report(traj2, masses2, 2.0);
    if (!(rep2.max_relative_distance_drift < 1e-6)) ok = false;
    if (!(rep2.first_invariant_drift < 1e-8 && rep2.second_invariant_drift < 1e-8)) ok = false;

    // Integrator-order check on the Newtonian run, at steps coarse enough
    // that truncation dominates the amplified rounding floor of this
    // (linearly unstable) equilibrium.
    const auto coarse = integrate(state3, masses3, 3.0, period3 / 100.0, 200, 10);
    const auto fine = integrate(state3, masses3, 3.0, period3 / 200.0, 400, 20);
    const double ratio = drift_report(coarse, masses3, 3.0).max_relative_distance_drift /
                         drift_report(fine, masses3, 3.0).max_relative_distance_drift;
    if (!(ratio > 8.0 && ratio < 32.0)) ok = false;

    detail << "a=3: dist " << rep3.max_relative_distance_drift << ", energy "
           << rep3.first_invariant_drift << ", ang.mom. " << rep3.second_invariant_drift
           << "; a=2: dist " << rep2.max_relative_distance_drift << ", interaction "
           << rep2.first_invariant_drift << ", moment " << rep2.second_invariant_drift
           << "; halving ratio " << ratio << " in [8,32]";
    return {ok, detail.str()};
}

// ---------------------------------------------------------------- 9 -------
Outcome nonplanar_structure() {
    bool skew_exact = true;
    std::mt19937 rng(909);
    std::uniform_real_distribution<double> unit(0.2, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 8);
        const int l = 2 + static_cast<int>(rng() % 3);
        std::vector<double> radii, heights;
        double r = unit(rng);
        for (int j = 0; j < l; ++j) {
            radii.push_back(r);
            heights.push_back(unit(rng) * j);
            r *= 1.3 + unit(rng);
        }
        const auto stack = PolygonStack::spatial_stack(n, radii, heights, 2.0 + unit(rng));
        for (int p = 1; p < n; ++p) {
            const auto b = mode_matrix(stack, p, Family::B, unit(rng));
            for (int t = 1; t <= l; ++t) {
                for (int s = 1; s <= l; ++s) {
                    if (b.at(t, s) != -b.at(s, t)) skew_exact = false;
                }
            }
        }
    }

    bool det_positive = true;
    double min_det = 1e300;
    const std::vector<std::pair<int, double>> cases{{4, 3.0}, {4, 2.0}, {5, 3.0}, {6, 3.0}};
    for (const auto& [n, a] : cases) {
        const auto stack = PolygonStack::spatial_stack(n, {1.0, 3.0}, {0.0, 2.0}, a);
        const auto solution = solve_nonplanar(stack, 1.0);
        const double det = b_mode_n_determinant(stack, 1.0 / solution.total_mass);
        min_det = std::min(min_det, det);
        if (!(det > 0.0)) det_positive = false;
    }

    const FigureParams fig;  // (r2, h1, h2, a, N) = (3, 1/4, 2, 3, 4), modes 1 and 3
    const GridSpec grid{0.05, 6.6, 400};
    const auto rows = figure_scan(fig, grid);
    int f_changes = 0, g_changes = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i - 1].f * rows[i].f < 0.0) ++f_changes;
        if (rows[i - 1].g * rows[i].g < 0.0) ++g_changes;
    }

    std::ostringstream detail;
    detail << (skew_exact ? "height mode matrices exactly skew-symmetric" : "SKEW BROKEN")
           << "; min two-polygon height mode-N det = " << min_det << " (> 0)"
           << "; figure products sign changes: f " << f_changes << ", g " << g_changes
           << " (>= 1 each)";
    return {skew_exact && det_positive && f_changes >= 1 && g_changes >= 1, detail.str()};
}

// --------------------------------------------------------------- 10 -------
Outcome scaled_block_convergence() {
    bool ok = true;
    std::ostringstream detail;
    double worst_final_rel = 0.0;
    for (int n : {4, 5}) {
        const auto stack = PolygonStack::planar_stack(n, {1.0, 2.0, 1.3, 2.6}, 3.0);
        for (int p = 1; p <= n; ++p) {
            if (p == n - 1) continue;
            const double product = scaled_block_product(stack, p);
            // Differences fall until they sit on the rounding floor of the
            // determinant evaluation; below the floor ordering is noise.
            const double floor = 1e-10 * std::abs(product);
            double prev = 1e300;
            double final_rel = 0.0;
            for (double alpha : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
                const double diff = std::abs(scaled_block_limit(stack, p, alpha) - product);
                if (diff >= prev && (diff > floor || prev > floor)) ok = false;
                prev = diff;
                final_rel = diff / std::abs(product);
            }
            worst_final_rel = std::max(worst_final_rel, final_rel);
            if (!(final_rel <= 1e-6)) ok = false;
        }
    }
    detail << "L=4, N in {4,5}, a=3, p != N-1 (mode N includes its corner entries): "
           << "differences decrease to the rounding floor; max relative gap at alpha=1e-6 = "
           << worst_final_rel << " (<= 1e-6)";
    return {ok, detail.str()};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "circulant eigenvalues vs dense projection (1e-10)", circulant_oracle},
        {2, "two-polygon mode determinants positive for p != N-1", determinant_positivity},
        {3, "f_p(x,1) < 0 and series bracket (1e-8)", f_sign_and_series_bracket},
        {4, "series coefficients nonpositive + convolution oracle", series_certification},
        {5, "a=2 closed form xi_p(1) = (N-(2p+1))/2 (1e-12)", xi_closed_form},
        {6, "random inverse solves: residual 1e-10, Cramer 1e-12", inverse_solve_residual},
        {7, "mass-sign threshold vs dense scan (one grid cell)", sign_threshold},
        {8, "rigid rotation drift + integrator order", dynamics_drift},
        {9, "non-planar: skew symmetry, height det > 0, figure signs", nonplanar_structure},
        {10, "scaled-radii block factorization limit", scaled_block_convergence},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        const double t0 = omp_get_wtime();
        const Outcome outcome = criterion.run();
        const double elapsed = omp_get_wtime() - t0;
        if (!outcome.pass) ++failures;
        std::printf("%s criterion %2d: %s [%s] (%.2f s)\n", outcome.pass ? "PASS" : "FAIL",
                    criterion.id, criterion.title, outcome.detail.c_str(), elapsed);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures;
}
