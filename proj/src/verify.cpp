#include "polyring/verify.hpp"

#include <cmath>

#include "polyring/errors.hpp"
#include "polyring/numeric.hpp"

namespace polyring {

ResidualReport cc_residual(const Configuration& config, const MassAssignment& masses, double a) {
    const std::size_t count = config.points.size();
    if (masses.masses.size() != count) {
        throw InvalidInstanceError("mass assignment does not match configuration size");
    }
    const double nu2 = masses.nu * masses.nu;
    Vec3 q_g;
    if (masses.total() == 0.0) {
        if (nu2 != 0.0) {
            throw ZeroTotalMassError("defining-equation residual needs nonzero total mass "
                                     "when nu is nonzero");
        }
        // nu = 0 kills the barycenter term; leave q_g at the origin.
    } else {
        q_g = center_of_mass(config, masses);
    }

    ResidualReport report;
    report.form = ResidualForm::defining_equation;
    report.per_body.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        KahanSum fx, fy, fz;
        for (std::size_t j = 0; j < count; ++j) {
            if (j == i) continue;
            const Vec3 d = config.points[i] - config.points[j];
            const double dist = d.norm();
            if (dist == 0.0) {
                throw SingularGeometryError("coincident bodies in residual evaluation");
            }
            const double w = masses.masses[j] / std::pow(dist, a);
            fx.add(w * d.x);
            fy.add(w * d.y);
            fz.add(w * d.z);
        }
        const Vec3 lhs = (config.points[i] - q_g) * nu2;
        const Vec3 defect{lhs.x - fx.value(), lhs.y - fy.value(), lhs.z - fz.value()};
        report.per_body[i] = defect.norm();
        report.max_residual = std::max(report.max_residual, report.per_body[i]);
    }
    return report;
}

ResidualReport full_matrix_residual(const PolygonStack& stack, const MassSolution& solution) {
    stack.validate();
    const int l = stack.polygons();
    const int n = stack.vertices;
    const double nu2 = solution.nu * solution.nu;
    const double m_total = solution.total_mass;
    double nu2_over_m = 0.0;
    if (m_total == 0.0) {
        if (nu2 != 0.0) {
            throw ZeroTotalMassError("block-matrix residual needs nonzero total mass "
                                     "when nu is nonzero");
        }
    } else {
        nu2_over_m = nu2 / m_total;
    }

    const BlockSystem a_system = assemble_block_system(stack, Family::A, solution.nu, nu2_over_m);
    const bool planar = stack.planar();
    BlockSystem b_system;
    if (!planar) {
        b_system = assemble_block_system(stack, Family::B, solution.nu, nu2_over_m);
    }

    // Per-polygon mass vectors are constant, so each block contributes
    // (sum of one block row) * mass. Row i of a circulant sums to the same
    // value as row 1; apply() keeps the evaluation straightforward instead.
    std::vector<cdouble> ones(n, 1.0);
    ResidualReport report;
    report.form = ResidualForm::block_matrix;
    report.per_body.assign(static_cast<std::size_t>(l) * n, 0.0);
    for (int t = 1; t <= l; ++t) {
        std::vector<cdouble> in_plane(n, 0.0);
        std::vector<cdouble> height(n, 0.0);
        for (int s = 1; s <= l; ++s) {
            const double mass_s = solution.per_polygon_masses[s - 1];
            const std::vector<cdouble> a_part = a_system.block(t, s).apply(ones);
            for (int k = 0; k < n; ++k) in_plane[k] += mass_s * a_part[k];
            if (!planar) {
                const std::vector<cdouble> b_part = b_system.block(t, s).apply(ones);
                for (int k = 0; k < n; ++k) height[k] += mass_s * b_part[k];
            }
        }
        for (int k = 0; k < n; ++k) {
            const cdouble a_defect = in_plane[k] - a_system.rhs[t - 1];
            double defect2 = std::norm(a_defect);
            if (!planar) {
                const cdouble b_defect = height[k] - b_system.rhs[t - 1];
                defect2 += std::norm(b_defect);
            }
            const double defect = std::sqrt(defect2);
            report.per_body[(t - 1) * n + k] = defect;
            report.max_residual = std::max(report.max_residual, defect);
        }
    }
    return report;
}

std::vector<cdouble> dense_circulant_eigen(const CirculantMatrix& m) {
    const int n = m.order();
    const auto dense = m.dense();
    std::vector<cdouble> eigenvalues(n);
    for (int p = 1; p <= n; ++p) {
        const std::vector<cdouble> v = eigen_basis_vector(n, p);
        KahanComplexSum projection;
        for (int i = 0; i < n; ++i) {
            KahanComplexSum row;
            for (int j = 0; j < n; ++j) row.add(dense[i][j] * v[j]);
            projection.add(std::conj(v[i]) * row.value());
        }
        eigenvalues[p - 1] = projection.value() / static_cast<double>(n);
    }
    return eigenvalues;
}

}  // namespace polyring
