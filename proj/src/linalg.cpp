#include "polyring/linalg.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "polyring/errors.hpp"

namespace polyring {

namespace {

// In-place LU with partial pivoting. Returns the pivot permutation and the
// determinant; a zero pivot leaves determinant = 0.
struct Lu {
    std::vector<double> lu;
    std::vector<int> perm;
    int n = 0;
    double determinant = 0.0;
    bool singular = false;
};

Lu factor(std::vector<double> matrix, int n) {
    Lu f;
    f.lu = std::move(matrix);
    f.n = n;
    f.perm.resize(n);
    std::iota(f.perm.begin(), f.perm.end(), 0);
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(f.lu[col * n + col]);
        for (int row = col + 1; row < n; ++row) {
            const double v = std::abs(f.lu[row * n + col]);
            if (v > best) {
                best = v;
                pivot = row;
            }
        }
        if (best == 0.0) {
            f.singular = true;
            f.determinant = 0.0;
            return f;
        }
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(f.lu[pivot * n + j], f.lu[col * n + j]);
            std::swap(f.perm[pivot], f.perm[col]);
            det = -det;
        }
        const double d = f.lu[col * n + col];
        det *= d;
        for (int row = col + 1; row < n; ++row) {
            const double factor = f.lu[row * n + col] / d;
            f.lu[row * n + col] = factor;
            for (int j = col + 1; j < n; ++j) f.lu[row * n + j] -= factor * f.lu[col * n + j];
        }
    }
    f.determinant = det;
    return f;
}

std::vector<double> solve_factored(const Lu& f, const std::vector<double>& rhs) {
    const int n = f.n;
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = rhs[f.perm[i]];
    for (int i = 1; i < n; ++i) {
        for (int j = 0; j < i; ++j) x[i] -= f.lu[i * n + j] * x[j];
    }
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) x[i] -= f.lu[i * n + j] * x[j];
        x[i] /= f.lu[i * n + i];
    }
    return x;
}

double one_norm(const std::vector<double>& m, int n) {
    double best = 0.0;
    for (int j = 0; j < n; ++j) {
        double col = 0.0;
        for (int i = 0; i < n; ++i) col += std::abs(m[i * n + j]);
        best = std::max(best, col);
    }
    return best;
}

}  // namespace

LinearSolution solve_dense(std::vector<double> matrix, std::vector<double> rhs) {
    const int n = static_cast<int>(rhs.size());
    if (matrix.size() != static_cast<std::size_t>(n) * n) {
        throw InvalidInstanceError("solve_dense: matrix shape does not match rhs length");
    }
    const double norm_a = one_norm(matrix, n);
    const Lu f = factor(matrix, n);

    LinearSolution out;
    out.determinant = f.determinant;
    if (f.singular) {
        out.condition = std::numeric_limits<double>::infinity();
        out.x.assign(n, std::numeric_limits<double>::quiet_NaN());
        return out;
    }
    out.x = solve_factored(f, rhs);

    std::vector<double> inv(static_cast<std::size_t>(n) * n);
    std::vector<double> e(n, 0.0);
    for (int j = 0; j < n; ++j) {
        e[j] = 1.0;
        const std::vector<double> col = solve_factored(f, e);
        for (int i = 0; i < n; ++i) inv[i * n + j] = col[i];
        e[j] = 0.0;
    }
    out.condition = norm_a * one_norm(inv, n);
    return out;
}

double determinant_dense(std::vector<double> matrix, int n) {
    return factor(std::move(matrix), n).determinant;
}

}  // namespace polyring
