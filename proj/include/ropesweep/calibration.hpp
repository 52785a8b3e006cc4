#pragma once

#include <optional>
#include <string>

#include "ropesweep/geom.hpp"

namespace ropesweep {

enum class BoundKind { LowerBound, UpperBound, Exact };

struct Bound {
    double value = 0.0;
    BoundKind kind = BoundKind::LowerBound;
    std::string witness;
    /// Calibrating plane, when the bound comes from a projected area.
    std::optional<Vec3> plane_normal;
};

const char* to_string(BoundKind kind);

/// |A_Pi(g1) - A_Pi(g0)|: any isotopy from g0 to g1 sweeps at least this.
Bound projected_area_bound(const PolygonalKnot& g0, const PolygonalKnot& g1, const OrientedPlane& plane);

/// Supremum of projected_area_bound over all oriented planes, i.e.
/// |vector_area(g1) - vector_area(g0)|, with the maximizing plane as witness.
Bound sup_plane_bound(const PolygonalKnot& g0, const PolygonalKnot& g1);

/// pi (R^2 - 1): distance between concentric round circles of radius 1 and R.
Bound circle_distance_oracle(double radius_ratio);

/// pi a b (R^2 - 1) for homothetic planar ellipses with semi-axes a >= b.
Bound ellipse_distance_oracle(double a, double b, double radius_ratio);

/// r b^2 / a: thickness of the ellipse with semi-axes r a >= r b.
double ellipse_thickness_oracle(double a, double b, double r);

}  // namespace ropesweep
