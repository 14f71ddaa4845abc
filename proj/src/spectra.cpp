#include "polyring/spectra.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "polyring/errors.hpp"
#include "polyring/linalg.hpp"
#include "polyring/numeric.hpp"

namespace polyring {

namespace {

constexpr double kDetThreshold = 1e-9;
constexpr double kNearSingularRatio = 1e-6;

// Eigenvalue sums are alternating; magnitude carries the same sum with the
// oscillating numerator replaced by its bound. That envelope is the scale
// against which a tiny determinant means "cancelled to rounding" rather than
// "small and trustworthy".
struct SumEval {
    double value = 0.0;
    double magnitude = 0.0;
};

// Shared real form of the off-diagonal mode eigenvalue; dh2 is the squared
// height gap, zero in the planar case.
// Squared chord distance in the cancellation-free half-angle form; also
// bit-identical under swapping r_t and r_s (negation and products commute
// exactly in IEEE).
double chord2(double r_t, double r_s, double dh2, double sin_half) {
    return (r_t - r_s) * (r_t - r_s) + dh2 + 4.0 * r_t * r_s * sin_half * sin_half;
}

SumEval interaction_sum(double r_t, double r_s, double dh2, int n, double a, int p) {
    const double theta = 2.0 * std::numbers::pi / n;
    KahanSum acc;
    KahanSum env;
    for (int j = 1; j <= n; ++j) {
        const double num = r_t * std::cos(j * theta * p) - r_s * std::cos(j * theta * (p + 1));
        const double den =
            std::pow(chord2(r_t, r_s, dh2, std::sin(0.5 * j * theta)), a / 2.0);
        acc.add(num / den);
        env.add((r_t + r_s) / den);
    }
    return {acc.value(), env.value()};
}

// Height-block interaction with the gap factored out, so the skew symmetry
// (h_t - h_s) <-> (h_s - h_t) is exact in floating point.
SumEval height_kernel_sum(double r_t, double r_s, double dh2, int n, double a, int p) {
    const double theta = 2.0 * std::numbers::pi / n;
    KahanSum acc;
    KahanSum env;
    for (int j = 1; j <= n; ++j) {
        const double den =
            std::pow(chord2(r_t, r_s, dh2, std::sin(0.5 * j * theta)), a / 2.0);
        acc.add(std::cos(j * theta * p) / den);
        env.add(1.0 / den);
    }
    return {acc.value(), env.value()};
}

SumEval xi_sum(double r_t, int n, double a, int p) {
    const double theta = 2.0 * std::numbers::pi / n;
    KahanSum acc;
    KahanSum env;
    for (int j = 1; j <= n - 1; ++j) {
        const double half = j * theta / 2.0;
        const double weight = std::pow(std::sin(half), 1.0 - a);
        acc.add(std::sin(half * (2.0 * p + 1.0)) * weight);
        env.add(weight);
    }
    const double scale = std::pow(2.0 * r_t, 1.0 - a);
    return {scale * acc.value(), scale * env.value()};
}

void check_radius(double r, const char* name) {
    if (!(r > 0.0)) {
        throw InvalidInstanceError(std::string(name) + " must be strictly positive");
    }
}

SumEval lambda_A_eval(const PolygonStack& stack, int p, int t, int s, double nu2_over_m) {
    const int n = stack.vertices;
    const int pr = reduce_mode(p, n);
    SumEval eval;
    if (t == s) {
        check_radius(stack.radii[t - 1], "r_t");
        eval = xi_sum(stack.radii[t - 1], n, stack.exponent, pr);
    } else {
        const double r_t = stack.radii[t - 1];
        const double r_s = stack.radii[s - 1];
        const double dh = stack.heights[t - 1] - stack.heights[s - 1];
        if (r_t == r_s && dh == 0.0) {
            throw SingularGeometryError("coincident polygons in lambda_A");
        }
        eval = interaction_sum(r_t, r_s, dh * dh, n, stack.exponent, pr);
    }
    if (pr == n - 1) {
        const double shift = stack.radii[s - 1] * nu2_over_m * n;
        eval.value += shift;
        eval.magnitude += std::abs(shift);
    }
    return eval;
}

SumEval lambda_B_eval(const PolygonStack& stack, int p, int t, int s, double nu2_over_m) {
    const int n = stack.vertices;
    const int pr = reduce_mode(p, n);
    SumEval eval;
    if (t != s) {
        const double r_t = stack.radii[t - 1];
        const double r_s = stack.radii[s - 1];
        const double dh = stack.heights[t - 1] - stack.heights[s - 1];
        if (r_t == r_s && dh == 0.0) {
            throw SingularGeometryError("coincident polygons in lambda_B");
        }
        const SumEval kernel = height_kernel_sum(r_t, r_s, dh * dh, n, stack.exponent, pr);
        eval.value = dh * kernel.value;
        eval.magnitude = std::abs(dh) * kernel.magnitude;
    }
    if (pr == n) {
        const double shift = stack.heights[s - 1] * nu2_over_m * n;
        eval.value += shift;
        eval.magnitude += std::abs(shift);
    }
    return eval;
}

}  // namespace

int reduce_mode(int p, int n) {
    int m = p % n;
    if (m <= 0) m += n;
    return m;
}

FpEval f_p_checked(double r_t, double r_s, int n, double a, int p) {
    check_radius(r_t, "r_t");
    check_radius(r_s, "r_s");
    if (r_t == r_s) {
        throw SingularGeometryError("f_p is singular at equal radii (r = " + std::to_string(r_t) +
                                    ")");
    }
    FpEval out;
    out.ill_conditioned = std::abs(r_t - r_s) / std::max(r_t, r_s) < kNearSingularRatio;
    out.value = interaction_sum(r_t, r_s, 0.0, n, a, reduce_mode(p, n)).value;
    return out;
}

double f_p(double r_t, double r_s, int n, double a, int p) {
    return f_p_checked(r_t, r_s, n, a, p).value;
}

double xi_p(double r_t, int n, double a, int p) {
    check_radius(r_t, "r_t");
    return xi_sum(r_t, n, a, reduce_mode(p, n)).value;
}

double lambda_A(const PolygonStack& stack, int p, int t, int s, double nu2_over_m) {
    return lambda_A_eval(stack, p, t, s, nu2_over_m).value;
}

double lambda_B(const PolygonStack& stack, int p, int t, int s, double nu2_over_m) {
    return lambda_B_eval(stack, p, t, s, nu2_over_m).value;
}

double ModeMatrix::frobenius() const {
    double acc = 0.0;
    for (double v : entries) acc += v * v;
    return std::sqrt(acc);
}

double ModeMatrix::magnitude_frobenius() const {
    double acc = 0.0;
    for (double v : magnitudes) acc += v * v;
    return std::sqrt(acc);
}

ModeMatrix mode_matrix(const PolygonStack& stack, int p, Family family, double nu2_over_m) {
    stack.validate();
    const int l = stack.polygons();
    const int pr = reduce_mode(p, stack.vertices);
    ModeMatrix m;
    m.p = pr;
    m.family = family;
    m.polygons = l;
    m.contains_nu_term =
        nu2_over_m != 0.0 &&
        (family == Family::A ? pr == stack.vertices - 1 : pr == stack.vertices);
    m.entries.resize(static_cast<std::size_t>(l) * l);
    m.magnitudes.resize(static_cast<std::size_t>(l) * l);
    for (int t = 1; t <= l; ++t) {
        for (int s = 1; s <= l; ++s) {
            const SumEval eval = family == Family::A ? lambda_A_eval(stack, pr, t, s, nu2_over_m)
                                                     : lambda_B_eval(stack, pr, t, s, nu2_over_m);
            m.entries[(t - 1) * l + (s - 1)] = eval.value;
            m.magnitudes[(t - 1) * l + (s - 1)] = eval.magnitude;
        }
    }
    return m;
}

DetVerdict determinant_verdict(const ModeMatrix& m, double det) {
    // First-order propagation of the entry envelopes through the determinant:
    // perturbing entry (t,s) by its envelope moves the determinant by
    // |minor(t,s)| * envelope(t,s). A determinant below 1e-9 of that scale
    // has no trustworthy sign.
    const int l = m.polygons;
    double scale = 0.0;
    if (l == 1) {
        scale = m.magnitudes[0];
    } else {
        std::vector<double> minor(static_cast<std::size_t>(l - 1) * (l - 1));
        for (int t = 0; t < l; ++t) {
            for (int s = 0; s < l; ++s) {
                int row = 0;
                for (int i = 0; i < l; ++i) {
                    if (i == t) continue;
                    int col = 0;
                    for (int j = 0; j < l; ++j) {
                        if (j == s) continue;
                        minor[row * (l - 1) + col] = m.entries[i * l + j];
                        ++col;
                    }
                    ++row;
                }
                scale += std::abs(determinant_dense(minor, l - 1)) * m.magnitudes[t * l + s];
            }
        }
    }
    return std::abs(det) > kDetThreshold * scale ? DetVerdict::nonzero
                                                 : DetVerdict::numerically_singular;
}

ModeDeterminant mode_determinant(const PolygonStack& stack, int p, Family family,
                                 double nu2_over_m) {
    stack.validate();
    const int l = stack.polygons();
    const int pr = reduce_mode(p, stack.vertices);

    ModeDeterminant result;
    if (family == Family::B && pr != stack.vertices && l % 2 == 1) {
        // Odd-order skew-symmetric matrix: the determinant vanishes
        // identically, no point reporting elimination noise.
        result.value = 0.0;
        result.verdict = DetVerdict::structurally_zero;
        return result;
    }

    const ModeMatrix m = mode_matrix(stack, pr, family, nu2_over_m);
    result.value = determinant_dense(m.entries, l);
    result.verdict = determinant_verdict(m, result.value);
    if (family == Family::A && stack.planar()) {
        result.reduced = reduced_mode_determinant(stack, pr);
    }
    return result;
}

double reduced_mode_determinant(const PolygonStack& stack, int p) {
    stack.validate();
    if (!stack.planar()) {
        throw InvalidInstanceError("reduced determinant is defined for planar stacks only");
    }
    const int l = stack.polygons();
    const int n = stack.vertices;
    const int pr = reduce_mode(p, n);
    const double xi_unit = xi_p(1.0, n, stack.exponent, pr);
    std::vector<double> entries(static_cast<std::size_t>(l) * l);
    for (int t = 1; t <= l; ++t) {
        for (int s = 1; s <= l; ++s) {
            entries[(t - 1) * l + (s - 1)] =
                t == s ? xi_unit
                       : f_p(1.0, stack.radii[s - 1] / stack.radii[t - 1], n, stack.exponent, pr);
        }
    }
    return determinant_dense(std::move(entries), l);
}

double scaled_block_limit(const PolygonStack& stack, int p, double alpha) {
    if (!(alpha > 0.0)) {
        throw InvalidInstanceError("scale factor alpha must be strictly positive");
    }
    if (stack.polygons() < 2) {
        throw InvalidInstanceError("scaled block limit needs at least two polygons");
    }
    PolygonStack scaled = stack;
    const int l = scaled.polygons();
    scaled.radii[l - 2] *= alpha;
    scaled.radii[l - 1] *= alpha;
    return reduced_mode_determinant(scaled, p);
}

double scaled_block_product(const PolygonStack& stack, int p) {
    const int l = stack.polygons();
    if (l < 2) {
        throw InvalidInstanceError("scaled block limit needs at least two polygons");
    }
    PolygonStack inner = stack;
    inner.radii = {stack.radii[l - 2], stack.radii[l - 1]};
    inner.heights = {0.0, 0.0};
    const double det_inner = reduced_mode_determinant(inner, p);
    if (l == 2) return det_inner;

    PolygonStack outer = stack;
    outer.radii.assign(stack.radii.begin(), stack.radii.end() - 2);
    outer.heights.assign(outer.radii.size(), 0.0);
    return reduced_mode_determinant(outer, p) * det_inner;
}

}  // namespace polyring
