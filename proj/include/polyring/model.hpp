#pragma once

#include <cmath>
#include <vector>

namespace polyring {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

// L nested regular N-gons with zero twist angle. Polygon j (1-based) sits at
// radius radii[j-1] and height heights[j-1]; all heights zero is the planar
// case. The potential exponent a selects the interaction law: a = 3 is
// Newtonian gravity, a = 2 the planar point-vortex law.
struct PolygonStack {
    int vertices = 0;             // bodies per polygon (N >= 3)
    std::vector<double> radii;    // one per polygon, strictly positive
    std::vector<double> heights;  // one per polygon
    double exponent = 3.0;        // a >= 2

    int polygons() const { return static_cast<int>(radii.size()); }
    int bodies() const { return vertices * polygons(); }
    bool planar() const;

    // Throws InvalidInstanceError naming the violated constraint:
    // N >= 3, positive radii, a >= 2, matching lengths, pairwise distinct
    // radii in the planar case, distinct heights whenever radii coincide.
    void validate() const;

    static PolygonStack planar_stack(int vertices, std::vector<double> radii, double exponent);
    static PolygonStack spatial_stack(int vertices, std::vector<double> radii,
                                      std::vector<double> heights, double exponent);
};

// Explicit body positions in the canonical enumeration: body (j-1)N+k is
// vertex k of polygon j, placed at angle theta*k with theta = 2*pi/N
// (so vertex N of a unit polygon lies on the positive x axis).
struct Configuration {
    std::vector<Vec3> points;
    PolygonStack stack;
};

struct MassAssignment {
    std::vector<double> masses;  // one per body, polygon-major order
    double nu = 0.0;             // angular parameter; nu^2 enters the equations

    double total() const;
};

Configuration build_positions(const PolygonStack& stack);

// Mass-weighted barycenter. Throws ZeroTotalMassError when the masses sum
// to zero.
Vec3 center_of_mass(const Configuration& config, const MassAssignment& masses);

}  // namespace polyring
