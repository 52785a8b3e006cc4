#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ropesweep/errors.hpp"
#include "ropesweep/geom.hpp"

namespace fixtures {

using ropesweep::ValidationError;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

double uniform(std::mt19937_64& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::vector<Vec3> ngon_vertices(std::size_t n, double r, double z)
{
    std::vector<Vec3> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double phi = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
        v[i] = {r * std::cos(phi), r * std::sin(phi), z};
    }
    return v;
}

PolygonalKnot ngon(std::size_t n, double r) { return PolygonalKnot(ngon_vertices(n, r)); }

PolygonalKnot thick_ngon(std::size_t n, double r) { return ngon(n, r / std::cos(kPi / static_cast<double>(n))); }

PolygonalKnot square(double h) { return PolygonalKnot({{h, h, 0}, {-h, h, 0}, {-h, -h, 0}, {h, -h, 0}}); }

PolygonalKnot ellipse(std::size_t n, double a, double b)
{
    std::vector<Vec3> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double phi = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
        v[i] = {a * std::cos(phi), b * std::sin(phi), 0.0};
    }
    return PolygonalKnot(std::move(v));
}

PolygonalKnot trefoil(std::size_t n, double scale)
{
    std::vector<Vec3> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
        v[i] = Vec3{std::sin(t) + 2.0 * std::sin(2.0 * t), std::cos(t) - 2.0 * std::cos(2.0 * t), -std::sin(3.0 * t)} *
               scale;
    }
    return PolygonalKnot(std::move(v));
}

PolygonalKnot random_knot(std::mt19937_64& rng, std::size_t n)
{
    for (;;) {
        const double r = uniform(rng, 2.0, 5.0);
        const double wiggle = uniform(rng, 0.0, 0.8);
        const int freq = 1 + static_cast<int>(rng() % 3);
        std::vector<Vec3> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double phi = 2.0 * kPi * (static_cast<double>(i) + uniform(rng, -0.3, 0.3)) / static_cast<double>(n);
            const double rr = r * (1.0 + uniform(rng, -0.15, 0.15));
            v[i] = {rr * std::cos(phi), rr * std::sin(phi), wiggle * std::sin(freq * phi) + uniform(rng, -0.2, 0.2)};
        }
        try {
            return PolygonalKnot(std::move(v));
        } catch (const ValidationError&) {
        }
    }
}

PolygonalKnot random_noncollinear(std::mt19937_64& rng, std::size_t n, double eta)
{
    for (;;) {
        std::vector<Vec3> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double phi = 2.0 * kPi * (static_cast<double>(i) + uniform(rng, -0.25, 0.25)) / static_cast<double>(n);
            const double rr = uniform(rng, 0.7, 1.3);
            v[i] = {rr * std::cos(phi), rr * std::sin(phi), uniform(rng, -0.4, 0.4)};
        }
        try {
            PolygonalKnot p(std::move(v));
            const auto angles = ropesweep::exterior_angles(p);
            if (std::all_of(angles.begin(), angles.end(), [&](double a) { return a >= eta && a <= kPi - eta; })) {
                return p;
            }
        } catch (const ValidationError&) {
        }
    }
}

Vec3 random_unit(std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    for (;;) {
        const Vec3 v{g(rng), g(rng), g(rng)};
        if (ropesweep::norm(v) > 1e-6) {
            return ropesweep::normalized(v);
        }
    }
}

RigidMotion random_motion(std::mt19937_64& rng)
{
    return RigidMotion::from_axis_angle(random_unit(rng), uniform(rng, -kPi, kPi),
                                        {uniform(rng, -10, 10), uniform(rng, -10, 10), uniform(rng, -10, 10)});
}

IsotopyPath random_path(std::mt19937_64& rng, const PolygonalKnot& start, std::size_t intervals, double step)
{
    std::vector<PolygonalKnot> frames{start};
    while (frames.size() < intervals + 1) {
        std::vector<Vec3> v(frames.back().vertices().begin(), frames.back().vertices().end());
        for (Vec3& p : v) {
            p += Vec3{uniform(rng, -step, step), uniform(rng, -step, step), uniform(rng, -step, step)};
        }
        try {
            frames.emplace_back(std::move(v));
        } catch (const ValidationError&) {
        }
    }
    std::vector<double> times{0.0};
    for (std::size_t k = 1; k < intervals; ++k) {
        times.push_back(times.back() + uniform(rng, 0.5, 1.5));
    }
    const double total = times.back() + uniform(rng, 0.5, 1.5);
    for (double& t : times) {
        t /= total;
    }
    times.push_back(1.0);
    return IsotopyPath(std::move(frames), std::move(times));
}

IsotopyPath homothety(const PolygonalKnot& p, double scale, std::size_t intervals)
{
    std::vector<PolygonalKnot> frames;
    for (std::size_t k = 0; k <= intervals; ++k) {
        const double s = 1.0 + (scale - 1.0) * static_cast<double>(k) / static_cast<double>(intervals);
        frames.push_back(k == 0 ? p : p.scaled(s));
    }
    return IsotopyPath::uniform(std::move(frames));
}

namespace {

std::vector<Vec3> trochoid(double k, double r, double h, std::size_t samples)
{
    std::vector<Vec3> v;
    for (std::size_t i = 0; i <= samples; ++i) {
        const double phi = -kPi + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(samples);
        v.push_back({k * phi - r * std::sin(phi), r * (1.0 - std::cos(phi)), h * std::sin(0.5 * phi)});
    }
    // Close over the top, well clear of the loop in projection.
    v.push_back({k * kPi, 3.0 * r, h});
    v.push_back({-k * kPi, 3.0 * r, -h});
    return v;
}

}  // namespace

IsotopyPath loop_removal(double rho, std::size_t samples)
{
    const double k = 0.004 * rho;
    const double h = 0.3 * rho;
    const std::size_t shrink_steps = 24;
    std::vector<PolygonalKnot> frames;
    std::vector<double> times;
    frames.emplace_back(trochoid(k, rho, h, samples));
    times.push_back(0.0);
    for (std::size_t j = 0; j <= shrink_steps; ++j) {
        const double f = static_cast<double>(j) / static_cast<double>(shrink_steps);
        const double r = rho * std::pow(k / (2.0 * rho), f);
        frames.emplace_back(trochoid(k, r, h, samples));
        times.push_back(j == shrink_steps ? 1.0 : 0.5 + 0.5 * f);
    }
    return IsotopyPath(std::move(frames), std::move(times));
}

IsotopyPath finger_pass(double width)
{
    auto frame = [&](double tip) {
        return PolygonalKnot({{-2, -2, 0},
                              {2, -2, 0},
                              {2, 2, 0},
                              {width, 2, 0},
                              {width, 1.5, 1},
                              {width, tip, 1},
                              {-width, tip, 1},
                              {-width, 1.5, 1},
                              {-width, 2, 0},
                              {-2, 2, 0}});
    };
    return IsotopyPath::uniform({frame(0.0), frame(-1.0), frame(-3.0)});
}

IsotopyPath tumbling_trefoil(const Vec3& axis, double angle, std::size_t keyframes)
{
    const PolygonalKnot base = trefoil(48);
    std::vector<PolygonalKnot> frames;
    for (std::size_t k = 0; k < keyframes; ++k) {
        const double a = angle * static_cast<double>(k) / static_cast<double>(keyframes - 1);
        frames.push_back(k == 0 ? base : base.transformed(RigidMotion::from_axis_angle(axis, a)));
    }
    return IsotopyPath::uniform(std::move(frames));
}

namespace {

struct ArcCurve {
    const std::vector<Vec3>& v;
    double n;

    Vec3 at(double a) const
    {
        double w = std::fmod(a, n);
        if (w < 0.0) {
            w += n;
        }
        const std::size_t i = std::min(static_cast<std::size_t>(w), v.size() - 1);
        const double s = w - static_cast<double>(i);
        return ropesweep::lerp(v[i], v[(i + 1) % v.size()], s);
    }
};

template <class F>
double golden_min(F f, double lo, double hi, double* argmin)
{
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 80 && b - a > 1e-13; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    const double x = 0.5 * (a + b);
    if (argmin) {
        *argmin = x;
    }
    return std::min({f(x), fc, fd});
}

}  // namespace

double dcsd_oracle(const std::vector<Vec3>& v, int m)
{
    const std::size_t n = v.size();
    const ArcCurve curve{v, static_cast<double>(n)};
    const double h = 1.0 / m;
    double best = std::numeric_limits<double>::infinity();
    auto dist = [&](double a, double b) { return ropesweep::distance(curve.at(a), curve.at(b)); };
    double longest = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        longest = std::max(longest, ropesweep::distance(v[i], v[(i + 1) % n]));
    }
    const double slack = 2.0 * 1.5 * h * longest * 1.01;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!ropesweep::edges_nonadjacent(i, j, n)) {
                continue;
            }
            for (int p = 0; p <= m; ++p) {
                const double a = static_cast<double>(i) + p * h;
                for (int q = 0; q <= m; ++q) {
                    const double b = static_cast<double>(j) + q * h;
                    const double d = dist(a, b);
                    // Refinement moves each end by at most `slack` along the curve.
                    if (d - best > slack) {
                        continue;
                    }
                    if (dist(a - h, b) < d || dist(a + h, b) < d || dist(a, b - h) < d || dist(a, b + h) < d) {
                        continue;
                    }
                    const double w = 1.5 * h;
                    double x = 0.0;
                    double y = 0.0;
                    golden_min([&](double s) { return golden_min([&](double t) { return dist(s, t); }, b - w, b + w, nullptr); },
                               a - w, a + w, &x);
                    const double refined = golden_min([&](double t) { return dist(x, t); }, b - w, b + w, &y);
                    // A minimizer pinned to the window edge below the grid value is a
                    // descent direction, not a critical chord. Flat valleys (parallel
                    // edges) keep their value and are accepted.
                    const double edge = 1e-3 * h;
                    const bool pinned = std::abs(x - a) > w - edge || std::abs(y - b) > w - edge;
                    if (pinned && refined < d * (1.0 - 1e-12)) {
                        continue;
                    }
                    best = std::min(best, refined);
                }
            }
        }
    }
    return best;
}

}  // namespace fixtures
