#pragma once

#include <complex>
#include <vector>

#include "polyring/model.hpp"

namespace polyring {

using cdouble = std::complex<double>;

// The two block families of the relative-equilibrium system: A couples the
// in-plane components, B the heights (identically zero content in the planar
// case).
enum class Family { A, B };

// Circulant matrix stored by its first row; entry (i,j) = first_row[(j-i) mod N].
// Only the first row is kept: everything downstream works through the shared
// eigenbasis, and dense expansion exists for the verification oracles.
struct CirculantMatrix {
    std::vector<cdouble> first_row;

    int order() const { return static_cast<int>(first_row.size()); }

    // 1-based indices, matching the block enumeration.
    cdouble entry(int i, int j) const;

    std::vector<cdouble> apply(const std::vector<cdouble>& v) const;
    std::vector<std::vector<cdouble>> dense() const;
};

// v_p = (1, w, w^2, ..., w^{N-1}) with w = exp(2*pi*i*p/N); p = N gives the
// all-ones vector. Throws for p outside 1..N.
std::vector<cdouble> eigen_basis_vector(int order, int p);

// Eigenvalue of m on eigen_basis_vector(order, p): sum_j c_{1,j} w_p^{j-1},
// accumulated with compensated summation.
cdouble circulant_eigenvalue(const CirculantMatrix& m, int p);

// Interaction block between polygons t and s (1-based). Entries follow the
// in-plane reduction of the equilibrium equation: interaction quotient plus
// nu2_over_m * r_s * w^{j-1}; the diagonal entry of a diagonal block is
// nu2_over_m * r_t. Passing nu2_over_m = 0 yields the mass-independent part.
CirculantMatrix assemble_A_block(const PolygonStack& stack, int t, int s, double nu2_over_m);

// Height-component block: (h_t - h_s) / |q_t - q_s|^a + nu2_over_m * h_s,
// with constant diagonal-block entries nu2_over_m * h_t.
CirculantMatrix assemble_B_block(const PolygonStack& stack, int t, int s, double nu2_over_m);

// All L^2 blocks of one family together with the right-hand side scales
// (nu^2 r_t for family A, nu^2 h_t for family B).
struct BlockSystem {
    std::vector<CirculantMatrix> blocks;  // row-major L x L
    std::vector<double> rhs;              // one scale per block row
    int polygons = 0;
    int order = 0;
    double nu2_over_m = 0.0;

    const CirculantMatrix& block(int t, int s) const;
};

BlockSystem assemble_block_system(const PolygonStack& stack, Family family, double nu,
                                  double nu2_over_m);

}  // namespace polyring
