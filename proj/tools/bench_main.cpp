// Timing comparison of the OpenMP kernels against their serial references:
// pairwise force evaluation and the grid scans. Run manually, e.g.
//   POLYRING_THREADS=8 ./polyring-bench
#include <omp.h>

#include <complex>
#include <cstdio>
#include <random>
#include <vector>

#include "polyring/dynamics.hpp"
#include "polyring/scan.hpp"

namespace {

using polyring::cvec;

double checksum(const cvec& v) {
    double acc = 0.0;
    for (const auto& z : v) acc += z.real() + z.imag();
    return acc;
}

void report(const char* name, double serial_s, double parallel_s) {
    std::printf("%-28s serial %8.3f ms   openmp %8.3f ms   speedup %5.2fx\n", name,
                serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s);
}

void bench_forces(int bodies, int reps) {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    std::uniform_real_distribution<double> mass(0.5, 2.0);
    cvec q(bodies);
    std::vector<double> m(bodies);
    for (int i = 0; i < bodies; ++i) {
        q[i] = {coord(rng), coord(rng)};
        m[i] = mass(rng);
    }
    cvec out_serial(bodies), out_parallel(bodies);

    double t0 = omp_get_wtime();
    for (int r = 0; r < reps; ++r) polyring::accelerations_reference(q, m, 3.0, out_serial);
    double t1 = omp_get_wtime();
    for (int r = 0; r < reps; ++r) polyring::accelerations(q, m, 3.0, out_parallel);
    double t2 = omp_get_wtime();
    report("accelerations (a=3)", t1 - t0, t2 - t1);
    if (checksum(out_serial) != checksum(out_parallel)) std::printf("  MISMATCH\n");

    t0 = omp_get_wtime();
    for (int r = 0; r < reps; ++r) polyring::vortex_velocities_reference(q, m, out_serial);
    t1 = omp_get_wtime();
    for (int r = 0; r < reps; ++r) polyring::vortex_velocities(q, m, out_parallel);
    t2 = omp_get_wtime();
    report("vortex velocities (a=2)", t1 - t0, t2 - t1);
    if (checksum(out_serial) != checksum(out_parallel)) std::printf("  MISMATCH\n");
}

void bench_scans(int points) {
    const polyring::GridSpec grid{0.01, 0.99, points};

    double t0 = omp_get_wtime();
    const auto sign_serial = polyring::sign_scan_reference(6, 3.0, 1.0, 1.0, grid);
    double t1 = omp_get_wtime();
    const auto sign_parallel = polyring::sign_scan(6, 3.0, 1.0, 1.0, grid);
    double t2 = omp_get_wtime();
    report("sign scan", t1 - t0, t2 - t1);
    if (sign_serial.rows.back().m2 != sign_parallel.rows.back().m2) std::printf("  MISMATCH\n");

    const polyring::GridSpec fig_grid{0.01, 6.6, points};
    const polyring::FigureParams fig;
    t0 = omp_get_wtime();
    const auto fig_serial = polyring::figure_scan_reference(fig, fig_grid);
    t1 = omp_get_wtime();
    const auto fig_parallel = polyring::figure_scan(fig, fig_grid);
    t2 = omp_get_wtime();
    report("figure scan", t1 - t0, t2 - t1);
    if (fig_serial.back().g != fig_parallel.back().g) std::printf("  MISMATCH\n");
}

}  // namespace

int main() {
    std::printf("threads: %d (cap %d)\n", omp_get_max_threads(), polyring::scan_thread_cap());
    bench_forces(2048, 5);
    bench_scans(100000);
    return 0;
}
