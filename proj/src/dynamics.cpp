#include "polyring/dynamics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "polyring/errors.hpp"
#include "polyring/numeric.hpp"

namespace polyring {

namespace {

using cd = std::complex<double>;

// Under ~64 bodies the OpenMP fork costs more than the pair loop.
constexpr std::size_t kParallelBodyThreshold = 64;

cd body_acceleration(std::span<const cd> q, std::span<const double> m, double a, std::size_t i) {
    KahanComplexSum acc;
    for (std::size_t j = 0; j < q.size(); ++j) {
        if (j == i) continue;
        const cd d = q[j] - q[i];
        acc.add(m[j] * d / std::pow(std::abs(d), a));
    }
    return acc.value();
}

cd body_vortex_velocity(std::span<const cd> q, std::span<const double> m, std::size_t i) {
    KahanComplexSum acc;
    for (std::size_t j = 0; j < q.size(); ++j) {
        if (j == i) continue;
        const cd d = q[i] - q[j];
        acc.add(m[j] * d / std::norm(d));
    }
    return cd(0.0, 1.0) * acc.value();
}

double min_pair_distance(std::span<const cd> q) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = i + 1; j < q.size(); ++j) {
            best = std::min(best, std::abs(q[i] - q[j]));
        }
    }
    return best;
}

}  // namespace

void accelerations_reference(std::span<const cd> positions, std::span<const double> masses,
                             double a, std::span<cd> out) {
    for (std::size_t i = 0; i < positions.size(); ++i) {
        out[i] = body_acceleration(positions, masses, a, i);
    }
}

void accelerations(std::span<const cd> positions, std::span<const double> masses, double a,
                   std::span<cd> out) {
    const std::int64_t count = static_cast<std::int64_t>(positions.size());
#pragma omp parallel for schedule(static) if (positions.size() >= kParallelBodyThreshold)
    for (std::int64_t i = 0; i < count; ++i) {
        out[i] = body_acceleration(positions, masses, a, static_cast<std::size_t>(i));
    }
}

void vortex_velocities_reference(std::span<const cd> positions, std::span<const double> masses,
                                 std::span<cd> out) {
    for (std::size_t i = 0; i < positions.size(); ++i) {
        out[i] = body_vortex_velocity(positions, masses, i);
    }
}

void vortex_velocities(std::span<const cd> positions, std::span<const double> masses,
                       std::span<cd> out) {
    const std::int64_t count = static_cast<std::int64_t>(positions.size());
#pragma omp parallel for schedule(static) if (positions.size() >= kParallelBodyThreshold)
    for (std::int64_t i = 0; i < count; ++i) {
        out[i] = body_vortex_velocity(positions, masses, static_cast<std::size_t>(i));
    }
}

SimState init_rotating(const Configuration& config, const MassSolution& solution, double a) {
    if (!config.stack.planar()) {
        throw InvalidInstanceError("dynamics are defined in the plane; "
                                   "non-planar configurations are not integrated");
    }
    const int vertices = config.stack.vertices;
    MassAssignment assignment{solution.body_masses(vertices), solution.nu};

    Vec3 q_g;
    if (assignment.total() != 0.0) {
        q_g = center_of_mass(config, assignment);
    }

    SimState state;
    state.positions.reserve(config.points.size());
    state.velocities.assign(config.points.size(), cd(0.0, 0.0));
    for (std::size_t i = 0; i < config.points.size(); ++i) {
        state.positions.emplace_back(config.points[i].x, config.points[i].y);
        if (a > 2.0) {
            const cd rel(config.points[i].x - q_g.x, config.points[i].y - q_g.y);
            state.velocities[i] = cd(0.0, 1.0) * solution.nu * rel;
        }
    }
    return state;
}

Trajectory integrate(const SimState& state, const MassAssignment& masses, double a, double dt,
                     long long steps, int stride) {
    if (!(dt > 0.0)) throw InvalidInstanceError("time step dt must be positive");
    if (steps < 0) throw InvalidInstanceError("step count must be nonnegative");
    if (stride < 1) throw InvalidInstanceError("sample stride must be at least 1");
    if (masses.masses.size() != state.positions.size()) {
        throw InvalidInstanceError("mass assignment does not match state size");
    }
    const std::size_t count = state.positions.size();
    const double guard = 1e-9 * min_pair_distance(state.positions);
    const bool second_order = a > 2.0;

    cvec q = state.positions;
    cvec v = state.velocities;
    cvec a1(count), a2(count), a3(count), a4(count);
    cvec qs(count), vs(count);

    Trajectory traj;
    traj.dt = dt;
    traj.steps = steps;
    traj.stride = stride;
    traj.times.push_back(state.time);
    traj.samples.push_back(q);
    if (second_order) traj.velocity_samples.push_back(v);

    const std::span<const double> m(masses.masses);
    for (long long step = 1; step <= steps; ++step) {
        const double t_now = state.time + (step - 1) * dt;
        if (min_pair_distance(q) < guard) {
            throw CollisionError(
                "integration aborted: pair distance under the collision guard at t = " +
                    std::to_string(t_now),
                t_now);
        }
        if (second_order) {
            // Stage slopes: position slope is the stage velocity, velocity
            // slope the acceleration at the stage position.
            accelerations(q, m, a, a1);
            for (std::size_t i = 0; i < count; ++i) qs[i] = q[i] + 0.5 * dt * v[i];
            for (std::size_t i = 0; i < count; ++i) vs[i] = v[i] + 0.5 * dt * a1[i];
            accelerations(qs, m, a, a2);
            const cvec v2 = vs;
            for (std::size_t i = 0; i < count; ++i) qs[i] = q[i] + 0.5 * dt * v2[i];
            for (std::size_t i = 0; i < count; ++i) vs[i] = v[i] + 0.5 * dt * a2[i];
            accelerations(qs, m, a, a3);
            const cvec v3 = vs;
            for (std::size_t i = 0; i < count; ++i) qs[i] = q[i] + dt * v3[i];
            for (std::size_t i = 0; i < count; ++i) vs[i] = v[i] + dt * a3[i];
            accelerations(qs, m, a, a4);
            const cvec v4 = vs;
            for (std::size_t i = 0; i < count; ++i) {
                q[i] += dt / 6.0 * (v[i] + 2.0 * v2[i] + 2.0 * v3[i] + v4[i]);
                v[i] += dt / 6.0 * (a1[i] + 2.0 * a2[i] + 2.0 * a3[i] + a4[i]);
            }
        } else {
            vortex_velocities(q, m, a1);
            for (std::size_t i = 0; i < count; ++i) qs[i] = q[i] + 0.5 * dt * a1[i];
            vortex_velocities(qs, m, a2);
            for (std::size_t i = 0; i < count; ++i) qs[i] = q[i] + 0.5 * dt * a2[i];
            vortex_velocities(qs, m, a3);
            for (std::size_t i = 0; i < count; ++i) qs[i] = q[i] + dt * a3[i];
            vortex_velocities(qs, m, a4);
            for (std::size_t i = 0; i < count; ++i) {
                q[i] += dt / 6.0 * (a1[i] + 2.0 * a2[i] + 2.0 * a3[i] + a4[i]);
            }
        }
        if (step % stride == 0) {
            traj.times.push_back(state.time + step * dt);
            traj.samples.push_back(q);
            if (second_order) traj.velocity_samples.push_back(v);
        }
    }
    return traj;
}

namespace {

double log_interaction_sum(const cvec& q, std::span<const double> m) {
    KahanSum acc;
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = i + 1; j < q.size(); ++j) {
            acc.add(m[i] * m[j] * std::log(std::abs(q[i] - q[j])));
        }
    }
    return acc.value();
}

// The interaction function whose gradient drives a > 2; energy is kinetic
// minus this.
double force_function(const cvec& q, std::span<const double> m, double a) {
    KahanSum acc;
    for (std::size_t i = 0; i < q.size(); ++i) {
        for (std::size_t j = i + 1; j < q.size(); ++j) {
            acc.add(m[i] * m[j] / std::pow(std::abs(q[i] - q[j]), a - 2.0));
        }
    }
    return acc.value() / (a - 2.0);
}

double energy(const cvec& q, const cvec& v, std::span<const double> m, double a) {
    KahanSum kinetic;
    for (std::size_t i = 0; i < q.size(); ++i) kinetic.add(0.5 * m[i] * std::norm(v[i]));
    return kinetic.value() - force_function(q, m, a);
}

double angular_momentum(const cvec& q, const cvec& v, std::span<const double> m) {
    KahanSum acc;
    for (std::size_t i = 0; i < q.size(); ++i) {
        acc.add(m[i] * (q[i].real() * v[i].imag() - q[i].imag() * v[i].real()));
    }
    return acc.value();
}

double quadratic_moment(const cvec& q, std::span<const double> m) {
    KahanSum acc;
    for (std::size_t i = 0; i < q.size(); ++i) acc.add(m[i] * std::norm(q[i]));
    return acc.value();
}

double relative_change(double value, double reference) {
    const double scale = std::abs(reference);
    return scale > 0.0 ? std::abs(value - reference) / scale : std::abs(value - reference);
}

}  // namespace

DriftReport drift_report(const Trajectory& trajectory, const MassAssignment& masses, double a) {
    if (trajectory.samples.empty()) {
        throw InvalidInstanceError("drift report needs a nonempty trajectory");
    }
    const bool second_order = a > 2.0;
    if (second_order && trajectory.velocity_samples.size() != trajectory.samples.size()) {
        throw InvalidInstanceError("drift report for a > 2 needs velocity samples");
    }
    const std::span<const double> m(masses.masses);
    const cvec& q0 = trajectory.samples.front();
    const std::size_t count = q0.size();

    DriftReport report;
    report.steps = trajectory.steps;
    report.dt = trajectory.dt;

    std::vector<double> d0(count * count, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i + 1; j < count; ++j) {
            d0[i * count + j] = std::abs(q0[i] - q0[j]);
        }
    }

    const double first0 = second_order ? energy(q0, trajectory.velocity_samples.front(), m, a)
                                       : log_interaction_sum(q0, m);
    const double second0 = second_order
                               ? angular_momentum(q0, trajectory.velocity_samples.front(), m)
                               : quadratic_moment(q0, m);

    for (std::size_t s = 1; s < trajectory.samples.size(); ++s) {
        const cvec& q = trajectory.samples[s];
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t j = i + 1; j < count; ++j) {
                const double drift =
                    std::abs(std::abs(q[i] - q[j]) - d0[i * count + j]) / d0[i * count + j];
                report.max_relative_distance_drift =
                    std::max(report.max_relative_distance_drift, drift);
            }
        }
        double first, second;
        if (second_order) {
            const cvec& v = trajectory.velocity_samples[s];
            first = energy(q, v, m, a);
            second = angular_momentum(q, v, m);
        } else {
            first = log_interaction_sum(q, m);
            second = quadratic_moment(q, m);
        }
        report.first_invariant_drift =
            std::max(report.first_invariant_drift, relative_change(first, first0));
        report.second_invariant_drift =
            std::max(report.second_invariant_drift, relative_change(second, second0));
    }
    report.conserved_quantity_drift =
        std::max(report.first_invariant_drift, report.second_invariant_drift);
    return report;
}

}  // namespace polyring
