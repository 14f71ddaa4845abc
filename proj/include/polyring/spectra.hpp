#pragma once

#include <optional>
#include <vector>

#include "polyring/circulant.hpp"
#include "polyring/model.hpp"

namespace polyring {

// Mode indices live in 1..N with p = N the all-ones mode; any other integer
// is reduced mod N before evaluation, so identities like f_{N+p} = f_p hold
// exactly.
int reduce_mode(int p, int n);

// Off-diagonal (inter-polygon) mode-p eigenvalue in closed real form:
//   sum_j [rT cos(j theta p) - rS cos(j theta (p+1))]
//         / (rT^2 - 2 rT rS cos(j theta) + rS^2)^(a/2).
// Homogeneous of degree 1-a. Throws SingularGeometryError at rT == rS.
double f_p(double r_t, double r_s, int n, double a, int p);

struct FpEval {
    double value = 0.0;
    // Set when |rT - rS| / max(rT, rS) < 1e-6: the j = N term dominates and
    // the sum loses digits.
    bool ill_conditioned = false;
};
FpEval f_p_checked(double r_t, double r_s, int n, double a, int p);

// Diagonal (intra-polygon) mode-p eigenvalue:
//   (2 rT)^(1-a) sum_{j=1}^{N-1} sin(j theta (2p+1)/2) sin^(1-a)(j theta / 2).
double xi_p(double r_t, int n, double a, int p);

// Mode-p eigenvalue of the (t,s) block of each family, real by symmetry of
// the interaction sums. The nu^2/M contribution is added analytically: it is
// exactly r_s*nu2_over_m*N on mode N-1 (family A) and h_s*nu2_over_m*N on
// mode N (family B), and zero elsewhere.
double lambda_A(const PolygonStack& stack, int p, int t, int s, double nu2_over_m);
double lambda_B(const PolygonStack& stack, int p, int t, int s, double nu2_over_m);

struct ModeMatrix {
    int p = 0;
    Family family = Family::A;
    int polygons = 0;
    bool contains_nu_term = false;
    std::vector<double> entries;     // row-major L x L
    // Cancellation envelopes of the entries: the same sums with oscillating
    // numerators replaced by their bounds. A determinant tiny against this
    // scale has cancelled to rounding and earns no sign verdict.
    std::vector<double> magnitudes;

    double at(int t, int s) const { return entries[(t - 1) * polygons + (s - 1)]; }
};

ModeMatrix mode_matrix(const PolygonStack& stack, int p, Family family, double nu2_over_m);

enum class DetVerdict { nonzero, numerically_singular, structurally_zero };

// nonzero iff |det| > 1e-9 * sum over entries of |minor| * envelope, the
// first-order bound on how far entry-level cancellation can move det.
DetVerdict determinant_verdict(const ModeMatrix& m, double det);

struct ModeDeterminant {
    double value = 0.0;
    // Planar family-A only: the determinant of the radius-ratio matrix, i.e.
    // value / (r_1 ... r_L)^(1-a), computed independently at unit scale.
    std::optional<double> reduced;
    DetVerdict verdict = DetVerdict::nonzero;
};

// Verdicts apply the relative threshold of determinant_verdict; below it the
// result is reported as numerically singular rather than given a sign.
// Family B with p != N and odd L is structurally zero (skew-symmetric odd
// order) and returns exact 0.
ModeDeterminant mode_determinant(const PolygonStack& stack, int p, Family family,
                                 double nu2_over_m);

// Determinant of the unit-scale ratio matrix [f_p(1, r_s/r_t)], diagonal
// xi_p(1). Planar stacks only; invariant under common scaling of all radii.
double reduced_mode_determinant(const PolygonStack& stack, int p);

// Reduced family-A determinant with the last two radii multiplied by alpha.
// As alpha -> 0+ this converges to scaled_block_product(stack, p).
double scaled_block_limit(const PolygonStack& stack, int p, double alpha);

// Product of the reduced determinants of the leading (L-2)-polygon block and
// the trailing 2-polygon block.
double scaled_block_product(const PolygonStack& stack, int p);

}  // namespace polyring
