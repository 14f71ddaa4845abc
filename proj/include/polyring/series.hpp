#pragma once

#include <vector>

namespace polyring {

// Taylor coefficient of (1-z)^(-a/2): alpha_0 = 1, then the stable recurrence
// alpha_k = alpha_{k-1} * (a/2 + k - 1) / k. Positive, nondecreasing for
// a >= 2, constant at a = 2.
double alpha_coeff(int k, double a);
std::vector<double> alpha_table(int max_order, double a);

// sum_{j=1}^{N} cos(2 pi j s / N) evaluated exactly in integer arithmetic:
// N when N divides s, 0 otherwise.
long long cosine_sum(long long s, int n);

// Coefficient beta_n of the expansion f_p(x,1) = sum beta_n x^n on (0,1).
// Computed from the fully reduced real form in which every trigonometric
// sum is an exact cosine_sum integer, so the sign of each contribution is
// not at the mercy of floating-point cancellation.
double beta_coeff(int order_n, int p, int n, double a);
std::vector<double> beta_table(int max_order, int p, int n, double a);

struct SeriesValue {
    double value = 0.0;
    double tail_bound = 0.0;
};

// Partial sum of the beta series at x in (0,1) plus a crude but rigorous
// error bound: the truncation envelope |beta_m| <= 4N(m+1) alpha_m alpha_{m/2}
// closed geometrically, widened by the floating-point evaluation allowance.
// The bound is an artifact of this implementation, not a published remainder.
SeriesValue series_eval(int p, int n, double a, double x, int order);

struct PairingStats {
    // Count of coefficient terms whose cosine pattern makes them positive,
    // and of those whose adjacent compensating term restored nonpositivity.
    // A sound certificate has the two counts equal.
    int fired = 0;
    int compensated = 0;
};

struct SeriesCertificate {
    int n = 0;
    double a = 0.0;
    int p = 0;
    int max_order = 0;
    std::vector<double> betas;
    bool all_nonpositive = false;
    int violation_index = -1;  // first offending n, or -1
    double tail_x = 0.0;       // evaluation point used for the tail bound
    double tail_bound = 0.0;
    PairingStats pairing;
};

// Computes beta_0..beta_max_order, checks nonpositivity against the rounding
// tolerance 1e-12 * max(1, envelope scale), and re-verifies the pairing
// structure at every positive term. A violation is reported in the verdict,
// never thrown.
SeriesCertificate certify_nonpositive(int n, double a, int p, int max_order,
                                      double tail_x = 0.9);

}  // namespace polyring
