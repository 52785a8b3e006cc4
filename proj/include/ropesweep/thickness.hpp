#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ropesweep/geom.hpp"

namespace ropesweep {

class IsotopyPath;

/// Slack used in every admissibility comparison.
inline constexpr double kAdmissibleSlack = 1e-9;
/// |cosine| bound for accepting a chord as perpendicular at an endpoint.
inline constexpr double kPerpendicularTolerance = 1e-8;

/// A point on the polygon: edge index plus parameter in [0, 1). Parameter 0
/// denotes the vertex at the start of the edge.
struct CurvePoint {
    std::size_t edge = 0;
    double param = 0.0;

    bool is_vertex() const { return param == 0.0; }
    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

struct ThicknessBreakdown {
    double min_rad = 0.0;
    double half_dcsd = 0.0;
    double thickness = 0.0;
    std::optional<std::size_t> argmin_vertex;
    std::optional<std::pair<CurvePoint, CurvePoint>> argmin_pair;
};

struct DcsdResult {
    double distance = 0.0;  ///< +inf when no doubly-critical chord exists
    std::optional<std::pair<CurvePoint, CurvePoint>> chord;
};

/// min(l-, l+) / (2 tan(theta/2)); +inf for a straight vertex.
double vertex_radius(std::span<const Vec3> v, std::size_t i);
double vertex_radius(const PolygonalKnot& p, std::size_t i);

/// Doubly-critical self-distance by closed-form candidate enumeration over
/// non-adjacent edge pairs (interior/interior, interior/vertex, vertex/vertex).
DcsdResult dcsd(std::span<const Vec3> v);
DcsdResult dcsd(const PolygonalKnot& p);

ThicknessBreakdown thickness(std::span<const Vec3> v);
ThicknessBreakdown thickness(const PolygonalKnot& p);

double ropelength(const PolygonalKnot& p);

struct SliceReport {
    double time = 0.0;
    double thickness = 0.0;
    double length = 0.0;
    bool ok = false;
};

struct AdmissibilityReport {
    double level_lambda = 0.0;
    std::vector<SliceReport> per_slice;
    bool admissible = false;

    /// First slice that fails, if any.
    std::optional<SliceReport> first_failure() const;
};

bool slice_ok(double thickness, double length, double lambda);

/// Keyframe times merged with `time_samples` uniform times on [0, 1].
std::vector<double> admissibility_sample_times(const IsotopyPath& path, std::size_t time_samples);

AdmissibilityReport check_admissible(const IsotopyPath& path, double lambda, std::size_t time_samples);

}  // namespace ropesweep
