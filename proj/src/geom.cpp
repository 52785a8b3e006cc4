#include "ropesweep/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ropesweep/errors.hpp"

namespace ropesweep {

PolygonalKnot::PolygonalKnot(std::vector<Vec3> vertices) : vertices_(std::move(vertices))
{
    const std::size_t n = vertices_.size();
    if (n < 3) {
        throw ValidationError("polygon needs at least 3 vertices, got " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!is_finite(vertices_[i])) {
            throw ValidationError("vertex " + std::to_string(i) + " is not finite");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (norm(edge(i)) <= kMinEdgeLength) {
            throw ValidationError("edge " + std::to_string(i) + " is degenerate (repeated vertex)");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (!edges_nonadjacent(i, j, n)) {
                continue;
            }
            const double d = segment_distance(vertex(i), vertex(i + 1), vertex(j), vertex(j + 1));
            if (d <= kEmbedTolerance) {
                throw ValidationError("polygon is not embedded: edges " + std::to_string(i) + " and " +
                                      std::to_string(j) + " intersect");
            }
        }
    }
    // Adjacent edges folding back onto each other (turning angle pi) also
    // violate embeddedness.
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 a = edge(i + n - 1);
        const Vec3 b = edge(i);
        if (norm(cross(a, b)) <= kEmbedTolerance * norm(a) * norm(b) && dot(a, b) < 0.0) {
            throw ValidationError("polygon folds back on itself at vertex " + std::to_string(i));
        }
    }
}

PolygonalKnot PolygonalKnot::transformed(const RigidMotion& m) const
{
    std::vector<Vec3> out;
    out.reserve(vertices_.size());
    for (const Vec3& v : vertices_) {
        out.push_back(m.apply(v));
    }
    return PolygonalKnot(std::move(out));
}

PolygonalKnot PolygonalKnot::scaled(double factor) const
{
    std::vector<Vec3> out;
    out.reserve(vertices_.size());
    for (const Vec3& v : vertices_) {
        out.push_back(v * factor);
    }
    return PolygonalKnot(std::move(out));
}

PolygonalKnot PolygonalKnot::reversed() const
{
    std::vector<Vec3> out(vertices_.rbegin(), vertices_.rend());
    return PolygonalKnot(std::move(out));
}

OrientedPlane OrientedPlane::from_normal(const Vec3& n)
{
    const double len = norm(n);
    if (!std::isfinite(len) || len == 0.0) {
        throw ValidationError("plane normal must be a finite non-zero vector");
    }
    return OrientedPlane{n / len};
}

bool edges_nonadjacent(std::size_t i, std::size_t j, std::size_t n)
{
    if (i == j) {
        return false;
    }
    return (i + 1) % n != j && (j + 1) % n != i;
}

double length(std::span<const Vec3> v)
{
    const std::size_t n = v.size();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total += distance(v[i], v[(i + 1) % n]);
    }
    return total;
}

double length(const PolygonalKnot& p) { return length(p.vertices()); }

std::vector<double> exterior_angles(std::span<const Vec3> v)
{
    const std::size_t n = v.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 a = v[i] - v[(i + n - 1) % n];
        const Vec3 b = v[(i + 1) % n] - v[i];
        out[i] = std::atan2(norm(cross(a, b)), dot(a, b));
    }
    return out;
}

std::vector<double> exterior_angles(const PolygonalKnot& p) { return exterior_angles(p.vertices()); }

double total_curvature(const PolygonalKnot& p)
{
    double total = 0.0;
    for (double theta : exterior_angles(p)) {
        total += theta;
    }
    return total;
}

Vec3 vector_area(std::span<const Vec3> v)
{
    const std::size_t n = v.size();
    Vec3 acc{};
    for (std::size_t i = 0; i < n; ++i) {
        acc += cross(v[i], v[(i + 1) % n]);
    }
    return acc * 0.5;
}

Vec3 vector_area(const PolygonalKnot& p) { return vector_area(p.vertices()); }

void plane_frame(const Vec3& n, Vec3& e1, Vec3& e2)
{
    const Vec3 u = normalized(n);
    // Seed with the coordinate axis least aligned with u.
    Vec3 seed{1, 0, 0};
    if (std::abs(u.y) < std::abs(u.x) && std::abs(u.y) <= std::abs(u.z)) {
        seed = {0, 1, 0};
    } else if (std::abs(u.z) < std::abs(u.x) && std::abs(u.z) < std::abs(u.y)) {
        seed = {0, 0, 1};
    }
    e1 = normalized(seed - u * dot(seed, u));
    e2 = cross(u, e1);
}

double projected_signed_area(const PolygonalKnot& p, const OrientedPlane& plane)
{
    Vec3 e1, e2;
    plane_frame(plane.normal, e1, e2);
    const std::size_t n = p.size();
    double twice = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3& a = p[i];
        const Vec3& b = p.vertex(i + 1);
        const double ax = dot(a, e1), ay = dot(a, e2);
        const double bx = dot(b, e1), by = dot(b, e2);
        twice += ax * by - bx * ay;
    }
    return 0.5 * twice;
}

namespace {

bool ball_contains(const Ball& b, const Vec3& p)
{
    const double scale = std::max(1.0, b.radius);
    return distance(b.center, p) <= b.radius + 1e-12 * scale;
}

Ball ball_from_two(const Vec3& a, const Vec3& b)
{
    return {(a + b) * 0.5, 0.5 * distance(a, b)};
}

Ball smallest_containing(std::span<const Vec3> pts);

Ball ball_from_three(const Vec3& a, const Vec3& b, const Vec3& c)
{
    const Vec3 ab = b - a;
    const Vec3 ac = c - a;
    const Vec3 n = cross(ab, ac);
    const double denom = 2.0 * norm2(n);
    if (denom <= 1e-24 * norm2(ab) * norm2(ac)) {
        const Vec3 tri[3] = {a, b, c};
        return smallest_containing(tri);
    }
    const Vec3 o = (cross(n, ab) * norm2(ac) + cross(ac, n) * norm2(ab)) / denom;
    return {a + o, norm(o)};
}

Ball ball_from_four(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d)
{
    const Vec3 ab = b - a;
    const Vec3 ac = c - a;
    const Vec3 ad = d - a;
    const double det = dot(ab, cross(ac, ad));
    const double scale = norm(ab) * norm(ac) * norm(ad);
    if (std::abs(det) <= 1e-12 * scale) {
        const Vec3 quad[4] = {a, b, c, d};
        return smallest_containing(quad);
    }
    const Vec3 o = (cross(ac, ad) * norm2(ab) + cross(ad, ab) * norm2(ac) + cross(ab, ac) * norm2(ad)) / (2.0 * det);
    return {a + o, norm(o)};
}

// Smallest ball containing at most four points, by trying every candidate
// support subset. Used for degenerate (collinear/coplanar) support sets.
Ball smallest_containing(std::span<const Vec3> pts)
{
    Ball best{pts[0], std::numeric_limits<double>::infinity()};
    auto consider = [&](const Ball& b) {
        if (b.radius < best.radius && std::all_of(pts.begin(), pts.end(), [&](const Vec3& p) { return ball_contains(b, p); })) {
            best = b;
        }
    };
    const std::size_t m = pts.size();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            consider(ball_from_two(pts[i], pts[j]));
        }
    }
    if (m == 4) {
        for (std::size_t skip = 0; skip < 4; ++skip) {
            Vec3 t[3];
            std::size_t k = 0;
            for (std::size_t i = 0; i < 4; ++i) {
                if (i != skip) {
                    t[k++] = pts[i];
                }
            }
            const Vec3 ab = t[1] - t[0];
            const Vec3 ac = t[2] - t[0];
            const Vec3 n = cross(ab, ac);
            const double denom = 2.0 * norm2(n);
            if (denom > 1e-24 * norm2(ab) * norm2(ac)) {
                const Vec3 o = (cross(n, ab) * norm2(ac) + cross(ac, n) * norm2(ab)) / denom;
                consider({t[0] + o, norm(o)});
            }
        }
    }
    if (!std::isfinite(best.radius)) {
        best.radius = 0.0;
    }
    return best;
}

Ball ball_from_support(const Vec3* support, std::size_t count)
{
    switch (count) {
    case 0:
        return {Vec3{}, -1.0};
    case 1:
        return {support[0], 0.0};
    case 2:
        return ball_from_two(support[0], support[1]);
    case 3:
        return ball_from_three(support[0], support[1], support[2]);
    default:
        return ball_from_four(support[0], support[1], support[2], support[3]);
    }
}

// Move-to-front Welzl recursion over pts[0, end) with `count` support points.
Ball welzl_mtf(std::vector<Vec3>& pts, std::size_t end, Vec3* support, std::size_t count)
{
    Ball ball = ball_from_support(support, count);
    if (count == 4) {
        return ball;
    }
    for (std::size_t i = 0; i < end; ++i) {
        if (ball.radius < 0.0 || !ball_contains(ball, pts[i])) {
            const Vec3 p = pts[i];
            support[count] = p;
            ball = welzl_mtf(pts, i, support, count + 1);
            std::rotate(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(i), pts.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        }
    }
    return ball;
}

}  // namespace

Ball min_enclosing_ball(std::span<const Vec3> points)
{
    if (points.empty()) {
        throw ValidationError("min_enclosing_ball of an empty point set");
    }
    std::vector<Vec3> pts(points.begin(), points.end());
    Vec3 support[4];
    return welzl_mtf(pts, pts.size(), support, 0);
}

double size(const PolygonalKnot& p, SizeFunctionalKind kind)
{
    if (kind == SizeFunctionalKind::MinEnclosingBallRadius) {
        return min_enclosing_ball(p.vertices()).radius;
    }
    double best = 0.0;
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            best = std::max(best, distance(p[i], p[j]));
        }
    }
    return best;
}

double density(const PolygonalKnot& p, SizeFunctionalKind kind)
{
    const double d = size(p, kind);
    if (!(d > 0.0)) {
        throw ValidationError("density undefined: polygon has zero size");
    }
    return length(p) / d;
}

double compression_radius(const PolygonalKnot& p, SizeFunctionalKind kind, double thickness)
{
    if (!(thickness > 0.0)) {
        throw ValidationError("compression radius needs positive thickness");
    }
    const double d = size(p, kind);
    if (!(d > 0.0)) {
        throw ValidationError("compression radius undefined: polygon has zero size");
    }
    return d / thickness;
}

double segment_distance(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1)
{
    // Closest points of two segments, clamped parameter form.
    const Vec3 d1 = p1 - p0;
    const Vec3 d2 = q1 - q0;
    const Vec3 r = p0 - q0;
    const double a = dot(d1, d1);
    const double e = dot(d2, d2);
    const double f = dot(d2, r);
    double s = 0.0;
    double t = 0.0;
    if (a <= 0.0 && e <= 0.0) {
        return norm(r);
    }
    if (a <= 0.0) {
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = dot(d1, r);
        if (e <= 0.0) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = dot(d1, d2);
            const double denom = norm2(cross(d1, d2));
            s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    return distance(p0 + d1 * s, q0 + d2 * t);
}

}  // namespace ropesweep
