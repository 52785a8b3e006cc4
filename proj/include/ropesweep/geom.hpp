#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ropesweep/vec3.hpp"

namespace ropesweep {

/// Two non-adjacent edges closer than this are treated as intersecting.
inline constexpr double kEmbedTolerance = 1e-9;
/// Edges shorter than this are rejected at construction.
inline constexpr double kMinEdgeLength = 1e-12;

/// Closed labelled polygon in R^3. Vertex i is joined to vertex (i+1) mod N.
///
/// Construction enforces N >= 3, finite coordinates, edge lengths above
/// kMinEdgeLength and embeddedness (non-adjacent edges farther apart than
/// kEmbedTolerance). Instances are immutable.
class PolygonalKnot {
public:
    explicit PolygonalKnot(std::vector<Vec3> vertices);

    std::size_t size() const { return vertices_.size(); }
    std::span<const Vec3> vertices() const { return vertices_; }
    const Vec3& operator[](std::size_t i) const { return vertices_[i]; }
    const Vec3& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

    /// v_{i+1} - v_i, indices mod N.
    Vec3 edge(std::size_t i) const { return vertex(i + 1) - vertex(i); }

    PolygonalKnot transformed(const RigidMotion& m) const;
    PolygonalKnot scaled(double factor) const;
    PolygonalKnot reversed() const;

    friend bool operator==(const PolygonalKnot&, const PolygonalKnot&) = default;

private:
    std::vector<Vec3> vertices_;
};

struct OrientedPlane {
    Vec3 normal{0, 0, 1};

    /// Normalizes `n`; throws ValidationError on a zero or non-finite vector.
    static OrientedPlane from_normal(const Vec3& n);
};

enum class SizeFunctionalKind { Diameter, MinEnclosingBallRadius };

struct Ball {
    Vec3 center;
    double radius = 0.0;
};

// Polygon functionals. The span overloads skip validation and are used on
// intermediate vertex arrays (optimizer trial points, interpolated slices).

double length(std::span<const Vec3> v);
double length(const PolygonalKnot& p);

std::vector<double> exterior_angles(std::span<const Vec3> v);
std::vector<double> exterior_angles(const PolygonalKnot& p);

double total_curvature(const PolygonalKnot& p);

Vec3 vector_area(std::span<const Vec3> v);
Vec3 vector_area(const PolygonalKnot& p);

/// Shoelace area of the projection of `p` to the plane, computed in an
/// orthonormal frame (e1, e2) with e1 x e2 = normal.
double projected_signed_area(const PolygonalKnot& p, const OrientedPlane& plane);

/// Exact smallest enclosing ball (move-to-front Welzl).
Ball min_enclosing_ball(std::span<const Vec3> points);

double size(const PolygonalKnot& p, SizeFunctionalKind kind);
double density(const PolygonalKnot& p, SizeFunctionalKind kind);
double compression_radius(const PolygonalKnot& p, SizeFunctionalKind kind, double thickness);

/// Minimum distance between closed segments [p0,p1] and [q0,q1].
double segment_distance(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1);

/// True when edges i and j are distinct and share no vertex.
bool edges_nonadjacent(std::size_t i, std::size_t j, std::size_t n);

/// Orthonormal (e1, e2) with e1 x e2 = unit(n).
void plane_frame(const Vec3& n, Vec3& e1, Vec3& e2);

}  // namespace ropesweep
