#include "polyring/scan.hpp"

#include <omp.h>

#include <cstdlib>
#include <exception>
#include <string>

#include "polyring/errors.hpp"
#include "polyring/model.hpp"
#include "polyring/solver.hpp"
#include "polyring/spectra.hpp"

namespace polyring {

double GridSpec::at(int i) const {
    return start + (stop - start) * i / (count - 1);
}

void GridSpec::validate() const {
    if (count < 2) {
        throw InvalidInstanceError("grid needs at least 2 points, got " + std::to_string(count));
    }
    if (!(stop > start)) {
        throw InvalidInstanceError("grid stop must exceed grid start");
    }
}

int scan_thread_cap() {
    int cap = omp_get_max_threads();
    if (const char* env = std::getenv("POLYRING_THREADS")) {
        const int requested = std::atoi(env);
        if (requested >= 1 && requested < cap) cap = requested;
    }
    return cap;
}

namespace {

SignScanRow sign_scan_point(int n, double a, double r2, double nu, double r1) {
    SignScanRow row;
    row.r1 = r1;
    const auto [m1, m2] = cramer_two_polygon(r1, r2, nu, n, a);
    row.m1 = m1;
    row.m2 = m2;
    row.g = xi_p(r1, n, a, n) * r2 - r1 * f_p(r2, r1, n, a, n);
    return row;
}

FigureScanRow figure_scan_point(const FigureParams& fig, double r1) {
    const PolygonStack stack =
        PolygonStack::spatial_stack(fig.n, {r1, fig.r2}, {fig.h1, fig.h2}, fig.a);
    FigureScanRow row;
    row.r1 = r1;
    row.f = -lambda_A(stack, fig.p_low, 1, 2, 0.0) * lambda_A(stack, fig.p_low, 2, 1, 0.0);
    row.g = -lambda_A(stack, fig.p_high, 1, 2, 0.0) * lambda_A(stack, fig.p_high, 2, 1, 0.0);
    return row;
}

void check_sign_grid(const GridSpec& grid, double r2) {
    grid.validate();
    if (!(grid.start > 0.0) || !(grid.stop < r2)) {
        throw InvalidInstanceError("sign scan grid must lie strictly inside (0, r2)");
    }
}

void check_figure_grid(const GridSpec& grid, const FigureParams& params) {
    grid.validate();
    if (!(grid.start > 0.0)) {
        throw InvalidInstanceError("figure scan grid must start above 0");
    }
    if (params.h1 == params.h2) {
        throw InvalidInstanceError("figure scan needs distinct heights (the grid crosses r1 = r2)");
    }
}

// Evaluates one grid point per slot in parallel; exceptions may not escape
// an OpenMP region, so the first one is captured and rethrown afterwards.
template <typename Row, typename PointFn>
void parallel_grid(const GridSpec& grid, std::vector<Row>& rows, PointFn&& point) {
    rows.resize(grid.count);
    std::exception_ptr error;
    const int threads = scan_thread_cap();
#pragma omp parallel for schedule(static) num_threads(threads)
    for (int i = 0; i < grid.count; ++i) {
        try {
            rows[i] = point(grid.at(i));
        } catch (...) {
#pragma omp critical(polyring_scan_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace

SignScanResult sign_scan_reference(int n, double a, double r2, double nu, const GridSpec& grid) {
    check_sign_grid(grid, r2);
    SignScanResult result;
    result.rows.resize(grid.count);
    for (int i = 0; i < grid.count; ++i) {
        result.rows[i] = sign_scan_point(n, a, r2, nu, grid.at(i));
    }
    result.delta = mass_sign_threshold(r2, n, a);
    return result;
}

SignScanResult sign_scan(int n, double a, double r2, double nu, const GridSpec& grid) {
    check_sign_grid(grid, r2);
    SignScanResult result;
    parallel_grid(grid, result.rows,
                  [&](double r1) { return sign_scan_point(n, a, r2, nu, r1); });
    result.delta = mass_sign_threshold(r2, n, a);
    return result;
}

std::vector<FigureScanRow> figure_scan_reference(const FigureParams& params,
                                                 const GridSpec& grid) {
    check_figure_grid(grid, params);
    std::vector<FigureScanRow> rows(grid.count);
    for (int i = 0; i < grid.count; ++i) rows[i] = figure_scan_point(params, grid.at(i));
    return rows;
}

std::vector<FigureScanRow> figure_scan(const FigureParams& params, const GridSpec& grid) {
    check_figure_grid(grid, params);
    std::vector<FigureScanRow> rows;
    parallel_grid(grid, rows, [&](double r1) { return figure_scan_point(params, r1); });
    return rows;
}

}  // namespace polyring
