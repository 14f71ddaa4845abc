#pragma once

#include <vector>

#include "polyring/circulant.hpp"
#include "polyring/model.hpp"
#include "polyring/solver.hpp"

namespace polyring {

// Independent residual oracles. The defining-equation residual is the final
// authority everywhere: it knows nothing about circulant structure, mode
// decompositions or closed-form eigenvalues.

enum class ResidualForm { defining_equation, block_matrix };

struct ResidualReport {
    double max_residual = 0.0;
    std::vector<double> per_body;
    ResidualForm form = ResidualForm::defining_equation;
};

// Per-body defect of nu^2 (q_i - q_G) = sum_{j != i} m_j (q_i - q_j)/|q_i - q_j|^a
// in the ambient dimension. A zero total mass is accepted only with nu = 0
// (the barycenter term then drops out); otherwise ZeroTotalMassError.
ResidualReport cc_residual(const Configuration& config, const MassAssignment& masses, double a);

// Assembles every interaction block at the candidate nu^2/M, applies the
// block system to the expanded mass vector and reports the defect against
// the nu^2 r (and, non-planar, nu^2 h) right-hand sides. Per-body defects
// combine the in-plane and height components, which makes them directly
// comparable to cc_residual.
ResidualReport full_matrix_residual(const PolygonStack& stack, const MassSolution& solution);

// Dense expansion of a circulant followed by Rayleigh projection onto each
// known eigenvector; the oracle against the closed eigenvalue formula.
std::vector<cdouble> dense_circulant_eigen(const CirculantMatrix& m);

}  // namespace polyring
