#pragma once

#include <vector>

namespace polyring {

// Linear grid with inclusive endpoints; count >= 2.
struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;

    double at(int i) const;
    void validate() const;
};

// Effective thread cap for grid scans: the OpenMP maximum, optionally capped
// by the POLYRING_THREADS environment variable.
int scan_thread_cap();

// Two-polygon mass sign scan over the inner radius. g is the monotone
// threshold function xi_N(r1) r2 - r1 f_N(r2, r1), whose root delta separates
// same-sign from opposite-sign mass pairs.
struct SignScanRow {
    double r1 = 0.0;
    double m1 = 0.0;
    double m2 = 0.0;
    double g = 0.0;
};

struct SignScanResult {
    std::vector<SignScanRow> rows;
    double delta = 0.0;
};

SignScanResult sign_scan(int n, double a, double r2, double nu, const GridSpec& grid);
SignScanResult sign_scan_reference(int n, double a, double r2, double nu, const GridSpec& grid);

// Secondary-diagonal products of the non-planar two-polygon in-plane system,
// as functions of the inner radius: f uses mode p_low, g mode p_high. With
// the canonical parameters (r2, h1, h2, a, N) = (3, 1/4, 2, 3, 4) and modes
// 1 and 3 this reproduces the sign-indefinite behaviour the planar case
// rules out.
struct FigureParams {
    int n = 4;
    double a = 3.0;
    double r2 = 3.0;
    double h1 = 0.25;
    double h2 = 2.0;
    int p_low = 1;
    int p_high = 3;
};

struct FigureScanRow {
    double r1 = 0.0;
    double f = 0.0;
    double g = 0.0;
};

std::vector<FigureScanRow> figure_scan(const FigureParams& params, const GridSpec& grid);
std::vector<FigureScanRow> figure_scan_reference(const FigureParams& params, const GridSpec& grid);

}  // namespace polyring
