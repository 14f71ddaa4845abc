#include "polyring/model.hpp"

#include <numbers>
#include <string>

#include "polyring/errors.hpp"

namespace polyring {

bool PolygonStack::planar() const {
    for (double h : heights) {
        if (h != 0.0) return false;
    }
    return true;
}

void PolygonStack::validate() const {
    if (vertices < 3) {
        throw InvalidInstanceError("polygon stack requires N >= 3 vertices per polygon, got N = " +
                                   std::to_string(vertices));
    }
    if (radii.empty()) {
        throw InvalidInstanceError("polygon stack requires at least one polygon");
    }
    if (heights.size() != radii.size()) {
        throw InvalidInstanceError("heights list must match radii list (" +
                                   std::to_string(heights.size()) + " heights for " +
                                   std::to_string(radii.size()) + " radii)");
    }
    if (!(exponent >= 2.0)) {
        throw InvalidInstanceError("potential exponent must satisfy a >= 2, got a = " +
                                   std::to_string(exponent));
    }
    for (std::size_t j = 0; j < radii.size(); ++j) {
        if (!(radii[j] > 0.0)) {
            throw InvalidInstanceError("radius of polygon " + std::to_string(j + 1) +
                                       " must be strictly positive");
        }
    }
    const bool is_planar = planar();
    for (std::size_t i = 0; i < radii.size(); ++i) {
        for (std::size_t j = i + 1; j < radii.size(); ++j) {
            if (radii[i] != radii[j]) continue;
            if (is_planar) {
                throw InvalidInstanceError("planar radii must be pairwise distinct (polygons " +
                                           std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                           " coincide)");
            }
            if (heights[i] == heights[j]) {
                throw InvalidInstanceError("polygons " + std::to_string(i + 1) + " and " +
                                           std::to_string(j + 1) +
                                           " share radius and height; equal radii require "
                                           "distinct heights");
            }
        }
    }
}

PolygonStack PolygonStack::planar_stack(int vertices, std::vector<double> radii, double exponent) {
    PolygonStack s;
    s.vertices = vertices;
    s.heights.assign(radii.size(), 0.0);
    s.radii = std::move(radii);
    s.exponent = exponent;
    s.validate();
    return s;
}

PolygonStack PolygonStack::spatial_stack(int vertices, std::vector<double> radii,
                                         std::vector<double> heights, double exponent) {
    PolygonStack s;
    s.vertices = vertices;
    s.radii = std::move(radii);
    s.heights = std::move(heights);
    s.exponent = exponent;
    s.validate();
    return s;
}

double MassAssignment::total() const {
    double m = 0.0;
    for (double v : masses) m += v;
    return m;
}

Configuration build_positions(const PolygonStack& stack) {
    stack.validate();
    const double theta = 2.0 * std::numbers::pi / stack.vertices;
    Configuration config;
    config.stack = stack;
    config.points.reserve(stack.bodies());
    for (int j = 1; j <= stack.polygons(); ++j) {
        const double r = stack.radii[j - 1];
        const double h = stack.heights[j - 1];
        for (int k = 1; k <= stack.vertices; ++k) {
            config.points.push_back({r * std::cos(theta * k), r * std::sin(theta * k), h});
        }
    }
    return config;
}

Vec3 center_of_mass(const Configuration& config, const MassAssignment& masses) {
    const double m_total = masses.total();
    if (m_total == 0.0) {
        throw ZeroTotalMassError("center of mass undefined: total mass is zero");
    }
    Vec3 acc;
    for (std::size_t i = 0; i < config.points.size(); ++i) {
        acc = acc + config.points[i] * masses.masses[i];
    }
    return acc * (1.0 / m_total);
}

}  // namespace polyring
