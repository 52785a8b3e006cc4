#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ropesweep/geom.hpp"

namespace ropesweep {

/// Keyframed polygonal isotopy. Vertex i at time t is the linear
/// interpolation of vertex i between the two bracketing keyframes.
class IsotopyPath {
public:
    /// Requires >= 2 keyframes with a common vertex count, strictly increasing
    /// times with times.front() == 0 and times.back() == 1.
    IsotopyPath(std::vector<PolygonalKnot> keyframes, std::vector<double> times);

    /// Keyframes at uniformly spaced times.
    static IsotopyPath uniform(std::vector<PolygonalKnot> keyframes);
    /// Two-keyframe path from a to b.
    static IsotopyPath linear(const PolygonalKnot& a, const PolygonalKnot& b);
    /// Two identical keyframes.
    static IsotopyPath constant(const PolygonalKnot& p);

    std::size_t keyframe_count() const { return keyframes_.size(); }
    std::size_t interval_count() const { return keyframes_.size() - 1; }
    std::size_t vertex_count() const { return keyframes_.front().size(); }
    const std::vector<PolygonalKnot>& keyframes() const { return keyframes_; }
    const std::vector<double>& times() const { return times_; }
    const PolygonalKnot& front() const { return keyframes_.front(); }
    const PolygonalKnot& back() const { return keyframes_.back(); }

    /// Interpolated vertices at time t in [0, 1] (not validated).
    std::vector<Vec3> slice(double t) const;

    IsotopyPath transformed(const RigidMotion& m) const;

private:
    std::vector<PolygonalKnot> keyframes_;
    std::vector<double> times_;
};

struct SweptAreaResult {
    double total = 0.0;
    std::vector<double> per_interval;
    /// Largest total area swept by a single labelled edge.
    double per_face_max = 0.0;
};

/// Exact value of the integral over u in [0,1] of |e x ((1-u) w0 + u w1)|.
double segment_area_integral(const Vec3& e, const Vec3& w0, const Vec3& w1);

/// Area swept by one labelled edge while its endpoints move linearly by
/// (d0, d1) and the edge vector moves from e_start to e_start + d1 - d0.
/// Adaptive Gauss-Legendre in time on the closed-form u integral.
double face_sweep(const Vec3& e_start, const Vec3& d0, const Vec3& d1, double tolerance);

/// Swept area of the linear morph between two vertex arrays of equal size.
double interval_sweep(std::span<const Vec3> from, std::span<const Vec3> to, std::vector<double>* per_face = nullptr);

SweptAreaResult swept_area(const IsotopyPath& path);

/// Infinitesimal swept-area seminorm of the velocity field W at P.
double infinitesimal_seminorm(const PolygonalKnot& p, std::span<const Vec3> velocity);

/// p1 then p2, each compressed to half of [0, 1]. Requires p1.back() to match
/// p2.front() vertexwise within 1e-12.
IsotopyPath concatenate(const IsotopyPath& p1, const IsotopyPath& p2);
IsotopyPath reverse(const IsotopyPath& p);
/// Splits every keyframe interval into `factor` equal pieces.
IsotopyPath refine(const IsotopyPath& p, std::size_t factor);
/// The part of `p` on [t0, t1], retimed to [0, 1].
IsotopyPath restrict_path(const IsotopyPath& p, double t0, double t1);

}  // namespace ropesweep
