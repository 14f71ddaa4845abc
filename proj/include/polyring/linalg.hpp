#pragma once

#include <vector>

namespace polyring {

// Dense helpers for the L x L mode systems (L stays single-digit here, so
// partial-pivoted elimination with an explicit-inverse condition estimate is
// plenty).

struct LinearSolution {
    std::vector<double> x;
    double determinant = 0.0;
    double condition = 0.0;  // 1-norm condition number via the explicit inverse
};

// Solves matrix * x = rhs for a row-major n x n matrix. An exactly singular
// matrix yields determinant 0 and condition = inf; no exception is thrown
// here, callers apply their own thresholds.
LinearSolution solve_dense(std::vector<double> matrix, std::vector<double> rhs);

double determinant_dense(std::vector<double> matrix, int n);

}  // namespace polyring
