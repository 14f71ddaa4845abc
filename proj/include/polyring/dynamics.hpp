#pragma once

#include <complex>
#include <span>
#include <vector>

#include "polyring/model.hpp"
#include "polyring/solver.hpp"

namespace polyring {

using cvec = std::vector<std::complex<double>>;

struct SimState {
    cvec positions;
    cvec velocities;  // ignored by the first-order vortex flow (a = 2)
    double time = 0.0;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<cvec> samples;
    std::vector<cvec> velocity_samples;  // filled for a > 2 only
    double dt = 0.0;
    long long steps = 0;
    int stride = 1;
};

struct DriftReport {
    double max_relative_distance_drift = 0.0;
    double conserved_quantity_drift = 0.0;  // max of the two drifts below
    double first_invariant_drift = 0.0;     // energy (a > 2) / log-interaction sum (a = 2)
    double second_invariant_drift = 0.0;    // angular momentum / quadratic moment
    long long steps = 0;
    double dt = 0.0;
};

// Pairwise force kernels. The plain serial loops are the reference the
// OpenMP versions are tested against; both fix the inner summation order per
// body, so results are identical bit for bit at any thread count.
void accelerations_reference(std::span<const std::complex<double>> positions,
                             std::span<const double> masses, double a,
                             std::span<std::complex<double>> out);
void accelerations(std::span<const std::complex<double>> positions,
                   std::span<const double> masses, double a,
                   std::span<std::complex<double>> out);
void vortex_velocities_reference(std::span<const std::complex<double>> positions,
                                 std::span<const double> masses,
                                 std::span<std::complex<double>> out);
void vortex_velocities(std::span<const std::complex<double>> positions,
                       std::span<const double> masses,
                       std::span<std::complex<double>> out);

// Rigid-rotation initial state for a solved planar instance. For a > 2 each
// body gets the tangential velocity nu * i * (q - q_G); for a = 2 the flow is
// first order and rotates the configuration at Omega = nu^2 by itself, so
// velocities stay zero.
SimState init_rotating(const Configuration& config, const MassSolution& solution, double a);

// Classical fixed-step 4th-order integration of the second-order system
// (a > 2) or the first-order vortex flow (a = 2). Sampling every `stride`
// steps; the initial state is always sample 0. Aborts with CollisionError
// when any pair distance falls below 1e-9 times the smallest initial pair
// distance.
Trajectory integrate(const SimState& state, const MassAssignment& masses, double a, double dt,
                     long long steps, int stride = 1);

DriftReport drift_report(const Trajectory& trajectory, const MassAssignment& masses, double a);

}  // namespace polyring
