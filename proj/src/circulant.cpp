#include "polyring/circulant.hpp"

#include <numbers>
#include <string>

#include "polyring/errors.hpp"
#include "polyring/numeric.hpp"

namespace polyring {

namespace {

void check_mode_index(int order, int p) {
    if (p < 1 || p > order) {
        throw InvalidInstanceError("mode index p must lie in 1.." + std::to_string(order) +
                                   ", got p = " + std::to_string(p));
    }
}

void check_polygon_index(const PolygonStack& stack, int t) {
    if (t < 1 || t > stack.polygons()) {
        throw InvalidInstanceError("polygon index must lie in 1.." +
                                   std::to_string(stack.polygons()) + ", got " +
                                   std::to_string(t));
    }
}

}  // namespace

cdouble CirculantMatrix::entry(int i, int j) const {
    const int n = order();
    int shift = (j - i) % n;
    if (shift < 0) shift += n;
    return first_row[shift];
}

std::vector<cdouble> CirculantMatrix::apply(const std::vector<cdouble>& v) const {
    const int n = order();
    std::vector<cdouble> out(n);
    for (int i = 1; i <= n; ++i) {
        KahanComplexSum acc;
        for (int j = 1; j <= n; ++j) acc.add(entry(i, j) * v[j - 1]);
        out[i - 1] = acc.value();
    }
    return out;
}

std::vector<std::vector<cdouble>> CirculantMatrix::dense() const {
    const int n = order();
    std::vector<std::vector<cdouble>> m(n, std::vector<cdouble>(n));
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) m[i - 1][j - 1] = entry(i, j);
    }
    return m;
}

std::vector<cdouble> eigen_basis_vector(int order, int p) {
    check_mode_index(order, p);
    const double theta = 2.0 * std::numbers::pi / order;
    std::vector<cdouble> v(order);
    for (int k = 0; k < order; ++k) {
        v[k] = std::polar(1.0, theta * p * k);
    }
    return v;
}

cdouble circulant_eigenvalue(const CirculantMatrix& m, int p) {
    const int n = m.order();
    check_mode_index(n, p);
    const double theta = 2.0 * std::numbers::pi / n;
    KahanComplexSum acc;
    for (int j = 1; j <= n; ++j) {
        acc.add(m.first_row[j - 1] * std::polar(1.0, theta * p * (j - 1)));
    }
    return acc.value();
}

CirculantMatrix assemble_A_block(const PolygonStack& stack, int t, int s, double nu2_over_m) {
    check_polygon_index(stack, t);
    check_polygon_index(stack, s);
    const int n = stack.vertices;
    const double theta = 2.0 * std::numbers::pi / n;
    const double r_t = stack.radii[t - 1];
    const double r_s = stack.radii[s - 1];
    const double dh = stack.heights[t - 1] - stack.heights[s - 1];
    if (t != s && r_t == r_s && dh == 0.0) {
        throw SingularGeometryError("polygons " + std::to_string(t) + " and " + std::to_string(s) +
                                    " occupy identical positions");
    }

    CirculantMatrix block;
    block.first_row.resize(n);
    for (int j = 1; j <= n; ++j) {
        if (t == s && j == 1) {
            block.first_row[0] = nu2_over_m * r_t;
            continue;
        }
        const cdouble w = std::polar(1.0, theta * (j - 1));
        const cdouble diff = r_t - r_s * w;
        // Cancellation-free, swap-symmetric squared distance.
        const double sin_half = std::sin(0.5 * theta * (j - 1));
        const double dist2 =
            (r_t - r_s) * (r_t - r_s) + dh * dh + 4.0 * r_t * r_s * sin_half * sin_half;
        block.first_row[j - 1] =
            diff / std::pow(dist2, stack.exponent / 2.0) + nu2_over_m * r_s * w;
    }
    return block;
}

CirculantMatrix assemble_B_block(const PolygonStack& stack, int t, int s, double nu2_over_m) {
    check_polygon_index(stack, t);
    check_polygon_index(stack, s);
    const int n = stack.vertices;
    const double theta = 2.0 * std::numbers::pi / n;
    const double r_t = stack.radii[t - 1];
    const double r_s = stack.radii[s - 1];
    const double h_t = stack.heights[t - 1];
    const double h_s = stack.heights[s - 1];
    if (t != s && r_t == r_s && h_t == h_s) {
        throw SingularGeometryError("polygons " + std::to_string(t) + " and " + std::to_string(s) +
                                    " occupy identical positions");
    }

    CirculantMatrix block;
    block.first_row.resize(n);
    for (int j = 1; j <= n; ++j) {
        if (t == s) {
            block.first_row[j - 1] = nu2_over_m * h_t;
            continue;
        }
        const double sin_half = std::sin(0.5 * theta * (j - 1));
        const double dist2 = (r_t - r_s) * (r_t - r_s) + (h_t - h_s) * (h_t - h_s) +
                             4.0 * r_t * r_s * sin_half * sin_half;
        block.first_row[j - 1] =
            (h_t - h_s) / std::pow(dist2, stack.exponent / 2.0) + nu2_over_m * h_s;
    }
    return block;
}

const CirculantMatrix& BlockSystem::block(int t, int s) const {
    return blocks[(t - 1) * polygons + (s - 1)];
}

BlockSystem assemble_block_system(const PolygonStack& stack, Family family, double nu,
                                  double nu2_over_m) {
    stack.validate();
    BlockSystem system;
    system.polygons = stack.polygons();
    system.order = stack.vertices;
    system.nu2_over_m = nu2_over_m;
    system.blocks.reserve(static_cast<std::size_t>(system.polygons) * system.polygons);
    for (int t = 1; t <= system.polygons; ++t) {
        for (int s = 1; s <= system.polygons; ++s) {
            system.blocks.push_back(family == Family::A
                                        ? assemble_A_block(stack, t, s, nu2_over_m)
                                        : assemble_B_block(stack, t, s, nu2_over_m));
        }
        const double scale = family == Family::A ? stack.radii[t - 1] : stack.heights[t - 1];
        system.rhs.push_back(nu * nu * scale);
    }
    return system;
}

}  // namespace polyring
