#include "ropesweep/thickness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ropesweep/errors.hpp"
#include "ropesweep/isotopy.hpp"

namespace ropesweep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Chord `c` leaves vertex k. The vertex is critical for the distance to the
// chord's far end when moving away from k along either incident edge does
// not decrease the distance, i.e. c has non-positive dot product with both
// edge directions taken pointing away from k.
bool in_normal_cone(std::span<const Vec3> v, std::size_t k, const Vec3& c)
{
    const std::size_t n = v.size();
    const Vec3 fwd = v[(k + 1) % n] - v[k];
    const Vec3 back = v[(k + n - 1) % n] - v[k];
    const double cn = norm(c);
    return dot(c, fwd) <= kPerpendicularTolerance * cn * norm(fwd) &&
           dot(c, back) <= kPerpendicularTolerance * cn * norm(back);
}

struct Candidate {
    double dist = kInf;
    std::pair<CurvePoint, CurvePoint> chord{};

    void offer(double d, CurvePoint a, CurvePoint b)
    {
        if (d < dist) {
            dist = d;
            chord = {a, b};
        }
    }
};

CurvePoint vertex_point(std::size_t k, std::size_t n) { return {k % n, 0.0}; }

// Interior of edge `e` (start a, direction d) against vertex index w.
void interior_vertex(std::span<const Vec3> v, std::size_t e, std::size_t w, Candidate& best)
{
    const std::size_t n = v.size();
    const Vec3& a = v[e];
    const Vec3 d = v[(e + 1) % n] - a;
    const Vec3& q = v[w % n];
    const double s = dot(q - a, d) / norm2(d);
    if (!(s > 0.0 && s < 1.0)) {
        return;
    }
    const Vec3 p = a + d * s;
    if (in_normal_cone(v, w % n, p - q)) {
        best.offer(distance(p, q), {e, s}, vertex_point(w, n));
    }
}

}  // namespace

double vertex_radius(std::span<const Vec3> v, std::size_t i)
{
    const std::size_t n = v.size();
    const Vec3 in = v[i] - v[(i + n - 1) % n];
    const Vec3 out = v[(i + 1) % n] - v[i];
    const double theta = std::atan2(norm(cross(in, out)), dot(in, out));
    if (theta == 0.0) {
        return kInf;
    }
    return std::min(norm(in), norm(out)) / (2.0 * std::tan(0.5 * theta));
}

double vertex_radius(const PolygonalKnot& p, std::size_t i)
{
    if (i >= p.size()) {
        throw ValidationError("vertex index out of range");
    }
    return vertex_radius(p.vertices(), i);
}

DcsdResult dcsd(std::span<const Vec3> v)
{
    const std::size_t n = v.size();
    Candidate best;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3& p0 = v[i];
        const Vec3 d1 = v[(i + 1) % n] - p0;
        const double d1n2 = norm2(d1);
        for (std::size_t j = i + 2; j < n; ++j) {
            if (!edges_nonadjacent(i, j, n)) {
                continue;
            }
            const Vec3& q0 = v[j];
            const Vec3 d2 = v[(j + 1) % n] - q0;
            const double d2n2 = norm2(d2);
            const Vec3 nrm = cross(d1, d2);
            const double nn = norm2(nrm);

            // Interior/interior: common perpendicular of the two lines.
            if (nn > 1e-18 * d1n2 * d2n2) {
                const Vec3 r = q0 - p0;
                const double s = dot(cross(r, d2), nrm) / nn;
                const double t = dot(cross(r, d1), nrm) / nn;
                if (s > 0.0 && s < 1.0 && t > 0.0 && t < 1.0) {
                    best.offer(distance(p0 + d1 * s, q0 + d2 * t), {i, s}, {j, t});
                }
            } else {
                // Parallel edges: every point of a positive-length overlap is
                // joined perpendicularly to the other edge.
                const double sa = dot(q0 - p0, d1) / d1n2;
                const double sb = dot(v[(j + 1) % n] - p0, d1) / d1n2;
                const double lo = std::max(0.0, std::min(sa, sb));
                const double hi = std::min(1.0, std::max(sa, sb));
                if (hi - lo > 1e-12) {
                    const double s = 0.5 * (lo + hi);
                    const Vec3 p = p0 + d1 * s;
                    const double t = dot(p - q0, d2) / d2n2;
                    best.offer(distance(p, q0 + d2 * t), {i, s}, {j, t});
                }
            }

            interior_vertex(v, i, j, best);
            interior_vertex(v, i, j + 1, best);
            interior_vertex(v, j, i, best);
            interior_vertex(v, j, i + 1, best);

            for (std::size_t a : {i, i + 1}) {
                for (std::size_t b : {j, j + 1}) {
                    const std::size_t ka = a % n;
                    const std::size_t kb = b % n;
                    if (ka == kb) {
                        continue;
                    }
                    const Vec3 c = v[kb] - v[ka];
                    if (in_normal_cone(v, ka, c) && in_normal_cone(v, kb, -c)) {
                        best.offer(norm(c), vertex_point(ka, n), vertex_point(kb, n));
                    }
                }
            }
        }
    }
    DcsdResult out;
    out.distance = best.dist;
    if (std::isfinite(best.dist)) {
        out.chord = best.chord;
    }
    return out;
}

DcsdResult dcsd(const PolygonalKnot& p) { return dcsd(p.vertices()); }

ThicknessBreakdown thickness(std::span<const Vec3> v)
{
    ThicknessBreakdown out;
    out.min_rad = kInf;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double r = vertex_radius(v, i);
        if (r < out.min_rad) {
            out.min_rad = r;
            out.argmin_vertex = i;
        }
    }
    const DcsdResult d = dcsd(v);
    out.half_dcsd = 0.5 * d.distance;
    out.argmin_pair = d.chord;
    out.thickness = std::min(out.min_rad, out.half_dcsd);
    return out;
}

ThicknessBreakdown thickness(const PolygonalKnot& p) { return thickness(p.vertices()); }

double ropelength(const PolygonalKnot& p)
{
    const double thi = thickness(p).thickness;
    if (!(thi > 0.0) || !std::isfinite(thi)) {
        throw NumericError("ropelength undefined: degenerate thickness");
    }
    return length(p) / thi;
}

std::optional<SliceReport> AdmissibilityReport::first_failure() const
{
    for (const SliceReport& s : per_slice) {
        if (!s.ok) {
            return s;
        }
    }
    return std::nullopt;
}

bool slice_ok(double thickness, double length, double lambda)
{
    return thickness >= 1.0 - kAdmissibleSlack && length <= lambda + kAdmissibleSlack;
}

std::vector<double> admissibility_sample_times(const IsotopyPath& path, std::size_t time_samples)
{
    if (time_samples < path.keyframe_count()) {
        throw ValidationError("time_samples (" + std::to_string(time_samples) +
                              ") must be at least the number of keyframes (" +
                              std::to_string(path.keyframe_count()) + ")");
    }
    std::vector<double> times(path.times().begin(), path.times().end());
    for (std::size_t k = 0; k < time_samples; ++k) {
        times.push_back(time_samples == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(time_samples - 1));
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    return times;
}

AdmissibilityReport check_admissible(const IsotopyPath& path, double lambda, std::size_t time_samples)
{
    if (!(lambda > 0.0)) {
        throw ValidationError("lambda must be positive");
    }
    AdmissibilityReport report;
    report.level_lambda = lambda;
    report.admissible = true;
    for (double t : admissibility_sample_times(path, time_samples)) {
        const std::vector<Vec3> slice = path.slice(t);
        SliceReport s;
        s.time = t;
        s.thickness = thickness(slice).thickness;
        s.length = length(slice);
        s.ok = slice_ok(s.thickness, s.length, lambda);
        report.admissible = report.admissible && s.ok;
        report.per_slice.push_back(s);
    }
    return report;
}

}  // namespace ropesweep
