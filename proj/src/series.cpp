#include "polyring/series.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "polyring/errors.hpp"
#include "polyring/numeric.hpp"

namespace polyring {

namespace {

void check_instance(int n, double a) {
    if (n < 1) throw InvalidInstanceError("cosine sums need N >= 1");
    if (!(a >= 2.0)) {
        throw InvalidInstanceError("series coefficients require a >= 2, got a = " +
                                   std::to_string(a));
    }
}

double envelope(int order_n, int n, const std::vector<double>& alpha) {
    // |beta_m| <= 4N(m+1) alpha_m alpha_{ceil(m/2)}; see certify tests.
    return 4.0 * n * (order_n + 1) * alpha[order_n] * alpha[(order_n + 1) / 2];
}

}  // namespace

double alpha_coeff(int k, double a) {
    if (k < 0) throw InvalidInstanceError("alpha coefficient index must be nonnegative");
    double value = 1.0;
    for (int i = 1; i <= k; ++i) value *= (a / 2.0 + i - 1) / i;
    return value;
}

std::vector<double> alpha_table(int max_order, double a) {
    std::vector<double> table(max_order + 1);
    table[0] = 1.0;
    for (int k = 1; k <= max_order; ++k) table[k] = table[k - 1] * ((a / 2.0 + k - 1) / k);
    return table;
}

long long cosine_sum(long long s, int n) {
    check_instance(n, 2.0);
    return s % n == 0 ? n : 0;
}

namespace {

// beta_n from the reduced real displays. Every cosine sum is the exact
// integer cosine_sum value, so each contribution carries its exact sign:
// the constant and telescoping groups are nonpositive term by term, and the
// mixed group is the one the pairing argument covers.
double beta_from_alphas(int order_n, int p, int n, const std::vector<double>& alpha) {
    if (order_n == 0) {
        return -alpha[0] * alpha[0] * cosine_sum(p + 1, n);
    }
    const long long m = order_n;
    KahanSum acc;
    acc.add(-alpha[order_n] * alpha[0] *
            (cosine_sum(p + 1 + m, n) + cosine_sum(p + 1 - m, n)));
    for (int k = 0; k < order_n; ++k) {
        acc.add(alpha[k] * (alpha[order_n - k - 1] - alpha[order_n - k]) *
                cosine_sum(p + 1 + 2 * k - m, n));
        acc.add(alpha[k] * (alpha[order_n - k - 1] * cosine_sum(p - 2 * k + m - 1, n) -
                            alpha[order_n - k] * cosine_sum(p + 1 - 2 * k + m, n)));
    }
    return acc.value() / 2.0;
}

}  // namespace

double beta_coeff(int order_n, int p, int n, double a) {
    check_instance(n, a);
    if (order_n < 0) throw InvalidInstanceError("beta coefficient index must be nonnegative");
    return beta_from_alphas(order_n, p, n, alpha_table(order_n, a));
}

std::vector<double> beta_table(int max_order, int p, int n, double a) {
    check_instance(n, a);
    if (max_order < 0) throw InvalidInstanceError("series order must be nonnegative");
    const std::vector<double> alpha = alpha_table(max_order, a);
    std::vector<double> betas(max_order + 1);
    for (int m = 0; m <= max_order; ++m) betas[m] = beta_from_alphas(m, p, n, alpha);
    return betas;
}

SeriesValue series_eval(int p, int n, double a, double x, int order) {
    check_instance(n, a);
    if (!(x > 0.0 && x < 1.0)) {
        throw InvalidInstanceError("series expansion is valid for x in (0,1) only, got x = " +
                                   std::to_string(x));
    }
    const std::vector<double> betas = beta_table(order, p, n, a);
    KahanSum acc;
    KahanSum abs_acc;
    double x_pow = 1.0;
    for (int m = 0; m <= order; ++m) {
        acc.add(betas[m] * x_pow);
        abs_acc.add(std::abs(betas[m]) * x_pow);
        x_pow *= x;
    }

    SeriesValue out;
    out.value = acc.value();

    // Tail: accumulate envelope terms until the term-ratio bound
    // x * rho_m drops below 1, then close geometrically. rho_m is a
    // nonincreasing upper bound on the envelope growth factor.
    std::vector<double> alpha = alpha_table(order + 2, a);
    auto alpha_at = [&](int k) {
        while (static_cast<int>(alpha.size()) <= k) {
            const int i = static_cast<int>(alpha.size());
            alpha.push_back(alpha.back() * (a / 2.0 + i - 1) / i);
        }
        return alpha[k];
    };
    // The truncation tail is often far below rounding; the bound must also
    // cover the floating-point error of evaluating the partial sum and of a
    // direct summation it gets compared against.
    constexpr double eps = 2.220446049250313e-16;
    double tail = 4.0 * eps * (order + 2.0) * (abs_acc.value() + n + 1.0);
    double x_m = std::pow(x, order + 1);
    const long long hard_cap = order + 1000000LL;
    for (long long m = order + 1; m <= hard_cap; ++m) {
        const double e_m =
            4.0 * n * (m + 1) * alpha_at(static_cast<int>(m)) *
            alpha_at(static_cast<int>((m + 1) / 2)) * x_m;
        const int half = static_cast<int>(m / 2);
        const double rho = ((m + 2.0) / (m + 1.0)) * ((a / 2.0 + m) / (m + 1.0)) *
                           ((a / 2.0 + half) / (half + 1.0));
        if (x * rho < 1.0) {
            tail += e_m / (1.0 - x * rho);
            out.tail_bound = tail;
            return out;
        }
        tail += e_m;
        x_m *= x;
    }
    out.tail_bound = std::numeric_limits<double>::infinity();
    return out;
}

SeriesCertificate certify_nonpositive(int n, double a, int p, int max_order, double tail_x) {
    check_instance(n, a);
    SeriesCertificate cert;
    cert.n = n;
    cert.a = a;
    cert.p = p;
    cert.max_order = max_order;
    cert.tail_x = tail_x;
    cert.betas = beta_table(max_order, p, n, a);

    const std::vector<double> alpha = alpha_table(max_order + 1, a);
    cert.all_nonpositive = true;
    for (int m = 0; m <= max_order; ++m) {
        const double tol = 1e-12 * std::max(1.0, envelope(m, n, alpha));
        if (cert.betas[m] > tol) {
            cert.all_nonpositive = false;
            cert.violation_index = m;
            break;
        }
    }

    // Re-verify the compensation structure: wherever the mixed group has a
    // positive term (its first cosine sum fires at N while the second is 0),
    // the adjacent term of index k+1 -- or, at k = n-1, the constant group --
    // must bring the pair back to a nonpositive total.
    for (int m = 1; m <= max_order; ++m) {
        for (int k = 0; k < m; ++k) {
            const bool fires = cosine_sum(p - 2LL * k + m - 1, n) == n &&
                               cosine_sum(p + 1 - 2LL * k + m, n) == 0;
            if (!fires) continue;
            ++cert.pairing.fired;
            double pair_total;
            if (k < m - 1) {
                pair_total =
                    alpha[k] * alpha[m - k - 1] * n +
                    alpha[k + 1] * (alpha[m - k - 2] * cosine_sum(p - 2LL * k + m - 3, n) -
                                    alpha[m - k - 1] * cosine_sum(p - 2LL * k + m - 1, n));
            } else {
                pair_total = alpha[m - 1] * alpha[0] * n -
                             alpha[m] * alpha[0] * cosine_sum(p + 1 - static_cast<long long>(m), n);
            }
            const double tol = 1e-12 * std::max(1.0, n * alpha[m] * alpha[m]);
            if (pair_total <= tol) ++cert.pairing.compensated;
        }
    }

    cert.tail_bound = series_eval(p, n, a, tail_x, max_order).tail_bound;
    return cert;
}

}  // namespace polyring
