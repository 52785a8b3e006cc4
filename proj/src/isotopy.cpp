#include "ropesweep/isotopy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ropesweep/errors.hpp"
#include "ropesweep/quadrature.hpp"

namespace ropesweep {

namespace {

// Absolute tolerance for the time integral of one keyframe interval.
constexpr double kIntervalTolerance = 1e-10;
constexpr int kMaxDepth = 20;

const QuadratureRule& rule7()
{
    static const QuadratureRule& rule = gauss_legendre(7);
    return rule;
}

double gl_norm_integral(const Vec3& a, const Vec3& d)
{
    static const QuadratureRule& rule = gauss_legendre(32);
    double acc = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double u = 0.5 * (rule.nodes[k] + 1.0);
        acc += rule.weights[k] * norm(a + d * u);
    }
    return 0.5 * acc;
}

// Integral over [0,1] of |alpha + beta u| for scalars, beta > 0.
double abs_linear_integral(double alpha, double beta)
{
    const double end = alpha + beta;
    if (alpha >= 0.0 && end >= 0.0) {
        return alpha + 0.5 * beta;
    }
    if (alpha <= 0.0 && end <= 0.0) {
        return -(alpha + 0.5 * beta);
    }
    return (alpha * alpha + end * end) / (2.0 * beta);
}

double adaptive(const std::function<double(double)>& f, double lo, double hi, double whole, double tol, int depth)
{
    const auto& rule = rule7();
    const double mid = 0.5 * (lo + hi);
    const double left = integrate_fixed(f, lo, mid, rule);
    const double right = integrate_fixed(f, mid, hi, rule);
    const double refined = left + right;
    if (depth >= kMaxDepth || std::abs(refined - whole) <= tol) {
        return refined;
    }
    return adaptive(f, lo, mid, left, 0.5 * tol, depth + 1) + adaptive(f, mid, hi, right, 0.5 * tol, depth + 1);
}

}  // namespace

IsotopyPath::IsotopyPath(std::vector<PolygonalKnot> keyframes, std::vector<double> times)
    : keyframes_(std::move(keyframes)), times_(std::move(times))
{
    if (keyframes_.size() < 2) {
        throw ValidationError("isotopy path needs at least two keyframes");
    }
    if (times_.size() != keyframes_.size()) {
        throw ValidationError("isotopy path: " + std::to_string(times_.size()) + " times for " +
                              std::to_string(keyframes_.size()) + " keyframes");
    }
    const std::size_t n = keyframes_.front().size();
    for (const PolygonalKnot& k : keyframes_) {
        if (k.size() != n) {
            throw ValidationError("isotopy keyframes must share the vertex count");
        }
    }
    if (times_.front() != 0.0 || times_.back() != 1.0) {
        throw ValidationError("isotopy times must start at 0 and end at 1");
    }
    for (std::size_t k = 1; k < times_.size(); ++k) {
        if (!(times_[k] > times_[k - 1])) {
            throw ValidationError("isotopy times must be strictly increasing");
        }
    }
}

IsotopyPath IsotopyPath::uniform(std::vector<PolygonalKnot> keyframes)
{
    const std::size_t m = keyframes.size();
    std::vector<double> times(m);
    for (std::size_t k = 0; k < m; ++k) {
        times[k] = m > 1 ? static_cast<double>(k) / static_cast<double>(m - 1) : 0.0;
    }
    if (m > 1) {
        times.back() = 1.0;
    }
    return IsotopyPath(std::move(keyframes), std::move(times));
}

IsotopyPath IsotopyPath::linear(const PolygonalKnot& a, const PolygonalKnot& b)
{
    return IsotopyPath({a, b}, {0.0, 1.0});
}

IsotopyPath IsotopyPath::constant(const PolygonalKnot& p) { return linear(p, p); }

std::vector<Vec3> IsotopyPath::slice(double t) const
{
    t = std::clamp(t, 0.0, 1.0);
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t k = static_cast<std::size_t>(it - times_.begin());
    k = std::clamp<std::size_t>(k, 1, times_.size() - 1) - 1;
    const double alpha = (t - times_[k]) / (times_[k + 1] - times_[k]);
    const auto a = keyframes_[k].vertices();
    const auto b = keyframes_[k + 1].vertices();
    std::vector<Vec3> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = alpha == 0.0 ? a[i] : (alpha == 1.0 ? b[i] : lerp(a[i], b[i], alpha));
    }
    return out;
}

IsotopyPath IsotopyPath::transformed(const RigidMotion& m) const
{
    std::vector<PolygonalKnot> frames;
    frames.reserve(keyframes_.size());
    for (const PolygonalKnot& k : keyframes_) {
        frames.push_back(k.transformed(m));
    }
    return IsotopyPath(std::move(frames), times_);
}

double segment_area_integral(const Vec3& e, const Vec3& w0, const Vec3& w1)
{
    const Vec3 a = cross(e, w0);
    const Vec3 d = cross(e, w1) - a;
    const double an = norm(a);
    const double dn = norm(d);
    if (dn == 0.0) {
        return an;
    }
    // Near-constant integrand: the antiderivative cancels badly, while the
    // integrand is analytic far beyond [0,1], so fixed quadrature is exact.
    if (dn < 1e-3 * an) {
        return gl_norm_integral(a, d);
    }
    const double k = norm(cross(a, d));
    const double aq = dn * dn;
    const double b = dot(a, d);
    if (k <= 1e-15 * an * dn || k == 0.0) {
        return abs_linear_integral(b / dn, dn);
    }
    // F(u) = 1/2 [X |A + uD| + K^2 / a^{3/2} asinh(a X / K)], X = u + b/a.
    const double x0 = b / aq;
    const double x1 = 1.0 + b / aq;
    const double coeff = k * k / (aq * dn);
    const double f1 = x1 * norm(a + d) + coeff * std::asinh(aq * x1 / k);
    const double f0 = x0 * an + coeff * std::asinh(aq * x0 / k);
    return 0.5 * (f1 - f0);
}

double face_sweep(const Vec3& e_start, const Vec3& d0, const Vec3& d1, double tolerance)
{
    const Vec3 de = d1 - d0;
    const std::function<double(double)> f = [&](double tau) {
        return segment_area_integral(e_start + de * tau, d0, d1);
    };
    if (norm2(d0) == 0.0 && norm2(d1) == 0.0) {
        return 0.0;
    }
    const double whole = integrate_fixed(f, 0.0, 1.0, rule7());
    return adaptive(f, 0.0, 1.0, whole, tolerance, 0);
}

double interval_sweep(std::span<const Vec3> from, std::span<const Vec3> to, std::vector<double>* per_face)
{
    const std::size_t n = from.size();
    if (to.size() != n) {
        throw ValidationError("interval_sweep: vertex counts differ");
    }
    const double tol = kIntervalTolerance / static_cast<double>(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        const double face = face_sweep(from[j] - from[i], to[i] - from[i], to[j] - from[j], tol);
        if (per_face != nullptr) {
            (*per_face)[i] += face;
        }
        total += face;
    }
    return total;
}

SweptAreaResult swept_area(const IsotopyPath& path)
{
    SweptAreaResult out;
    std::vector<double> faces(path.vertex_count(), 0.0);
    const auto& frames = path.keyframes();
    for (std::size_t k = 0; k + 1 < frames.size(); ++k) {
        const double a = interval_sweep(frames[k].vertices(), frames[k + 1].vertices(), &faces);
        out.per_interval.push_back(a);
        out.total += a;
    }
    out.per_face_max = *std::max_element(faces.begin(), faces.end());
    return out;
}

double infinitesimal_seminorm(const PolygonalKnot& p, std::span<const Vec3> velocity)
{
    const std::size_t n = p.size();
    if (velocity.size() != n) {
        throw ValidationError("seminorm: velocity field needs one vector per vertex");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total += segment_area_integral(p.edge(i), velocity[i], velocity[(i + 1) % n]);
    }
    return total;
}

IsotopyPath concatenate(const IsotopyPath& p1, const IsotopyPath& p2)
{
    if (p1.vertex_count() != p2.vertex_count()) {
        throw ValidationError("concatenate: vertex counts differ");
    }
    const auto end = p1.back().vertices();
    const auto start = p2.front().vertices();
    for (std::size_t i = 0; i < end.size(); ++i) {
        if (distance(end[i], start[i]) > 1e-12) {
            throw ValidationError("concatenate: end of first path does not match start of second (vertex " +
                                  std::to_string(i) + ")");
        }
    }
    std::vector<PolygonalKnot> frames = p1.keyframes();
    std::vector<double> times;
    for (double t : p1.times()) {
        times.push_back(0.5 * t);
    }
    for (std::size_t k = 1; k < p2.keyframe_count(); ++k) {
        frames.push_back(p2.keyframes()[k]);
        times.push_back(0.5 + 0.5 * p2.times()[k]);
    }
    return IsotopyPath(std::move(frames), std::move(times));
}

IsotopyPath reverse(const IsotopyPath& p)
{
    std::vector<PolygonalKnot> frames(p.keyframes().rbegin(), p.keyframes().rend());
    std::vector<double> times;
    for (auto it = p.times().rbegin(); it != p.times().rend(); ++it) {
        times.push_back(1.0 - *it);
    }
    return IsotopyPath(std::move(frames), std::move(times));
}

IsotopyPath refine(const IsotopyPath& p, std::size_t factor)
{
    if (factor < 1) {
        throw ValidationError("refine factor must be >= 1");
    }
    if (factor == 1) {
        return p;
    }
    std::vector<PolygonalKnot> frames;
    std::vector<double> times;
    const auto& src = p.keyframes();
    const auto& ts = p.times();
    for (std::size_t k = 0; k + 1 < src.size(); ++k) {
        frames.push_back(src[k]);
        times.push_back(ts[k]);
        for (std::size_t j = 1; j < factor; ++j) {
            const double alpha = static_cast<double>(j) / static_cast<double>(factor);
            std::vector<Vec3> v(src[k].size());
            for (std::size_t i = 0; i < v.size(); ++i) {
                v[i] = lerp(src[k][i], src[k + 1][i], alpha);
            }
            frames.emplace_back(std::move(v));
            times.push_back(ts[k] + alpha * (ts[k + 1] - ts[k]));
        }
    }
    frames.push_back(src.back());
    times.push_back(1.0);
    return IsotopyPath(std::move(frames), std::move(times));
}

IsotopyPath restrict_path(const IsotopyPath& p, double t0, double t1)
{
    if (!(t0 >= 0.0 && t1 <= 1.0 && t0 < t1)) {
        throw ValidationError("restrict_path needs 0 <= t0 < t1 <= 1");
    }
    const double span = t1 - t0;
    std::vector<PolygonalKnot> frames{PolygonalKnot(p.slice(t0))};
    std::vector<double> times{0.0};
    for (std::size_t k = 0; k < p.keyframe_count(); ++k) {
        const double t = p.times()[k];
        const double local = (t - t0) / span;
        if (local > 1e-14 && local < 1.0 - 1e-14) {
            frames.push_back(p.keyframes()[k]);
            times.push_back(local);
        }
    }
    frames.emplace_back(p.slice(t1));
    times.push_back(1.0);
    return IsotopyPath(std::move(frames), std::move(times));
}

}  // namespace ropesweep
