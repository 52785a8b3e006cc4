#include "ropesweep/calibration.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "ropesweep/errors.hpp"

namespace ropesweep {

namespace {

void require_same_size(const PolygonalKnot& g0, const PolygonalKnot& g1)
{
    if (g0.size() != g1.size()) {
        throw ValidationError("calibration bounds need polygons with the same vertex count");
    }
}

std::string format_normal(const Vec3& n)
{
    std::ostringstream os;
    os.precision(17);
    os << "plane normal (" << n.x << ", " << n.y << ", " << n.z << ")";
    return os.str();
}

}  // namespace

const char* to_string(BoundKind kind)
{
    switch (kind) {
    case BoundKind::LowerBound:
        return "LowerBound";
    case BoundKind::UpperBound:
        return "UpperBound";
    case BoundKind::Exact:
        return "Exact";
    }
    return "?";
}

Bound projected_area_bound(const PolygonalKnot& g0, const PolygonalKnot& g1, const OrientedPlane& plane)
{
    require_same_size(g0, g1);
    Bound b;
    b.value = std::abs(projected_signed_area(g1, plane) - projected_signed_area(g0, plane));
    b.kind = BoundKind::LowerBound;
    b.plane_normal = plane.normal;
    b.witness = format_normal(plane.normal);
    return b;
}

Bound sup_plane_bound(const PolygonalKnot& g0, const PolygonalKnot& g1)
{
    require_same_size(g0, g1);
    const Vec3 diff = vector_area(g1) - vector_area(g0);
    Bound b;
    b.value = norm(diff);
    b.kind = BoundKind::LowerBound;
    if (b.value > 0.0) {
        b.plane_normal = diff / b.value;
        b.witness = format_normal(*b.plane_normal);
    } else {
        b.witness = "equal vector areas (every plane gives 0)";
    }
    return b;
}

Bound circle_distance_oracle(double radius_ratio)
{
    if (!(radius_ratio >= 1.0)) {
        throw ValidationError("circle oracle needs R >= 1");
    }
    Bound b;
    b.value = std::numbers::pi * (radius_ratio * radius_ratio - 1.0);
    b.kind = BoundKind::Exact;
    b.witness = "concentric round circles C_1 -> C_R, valid for lambda >= 2 pi R";
    return b;
}

Bound ellipse_distance_oracle(double a, double b, double radius_ratio)
{
    if (!(b > 0.0) || a < b) {
        throw ValidationError("ellipse oracle needs a >= b > 0");
    }
    if (!(radius_ratio >= 1.0)) {
        throw ValidationError("ellipse oracle needs R >= 1");
    }
    Bound out;
    out.value = std::numbers::pi * a * b * (radius_ratio * radius_ratio - 1.0);
    out.kind = BoundKind::Exact;
    std::ostringstream os;
    os.precision(17);
    os << "homothetic ellipses E_1 -> E_R; thickness hypothesis b^2/a = " << b * b / a
       << (b * b / a >= 1.0 ? " >= 1 (holds)" : " < 1 (fails: start from a larger scale)");
    out.witness = os.str();
    return out;
}

double ellipse_thickness_oracle(double a, double b, double r)
{
    if (!(b > 0.0) || a < b) {
        throw ValidationError("ellipse oracle needs a >= b > 0");
    }
    if (!(r > 0.0)) {
        throw ValidationError("ellipse oracle needs r > 0");
    }
    return r * b * b / a;
}

}  // namespace ropesweep
