#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "ropesweep/errors.hpp"
#include "ropesweep/isotopy.hpp"
#include "ropesweep/quadrature.hpp"

using namespace ropesweep;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Composite Simpson on [0,1]; independent of the Gauss-Legendre machinery.
template <class F>
double simpson(F f, int n)
{
    const double h = 1.0 / n;
    double s = f(0.0) + f(1.0);
    for (int k = 1; k < n; ++k) {
        s += (k % 2 ? 4.0 : 2.0) * f(k * h);
    }
    return s * h / 3.0;
}

double simpson_segment(const Vec3& e, const Vec3& w0, const Vec3& w1)
{
    return simpson([&](double u) { return norm(cross(e, lerp(w0, w1, u))); }, 20000);
}

IsotopyPath translate(const PolygonalKnot& p, const Vec3& by)
{
    return IsotopyPath::linear(p, p.transformed(RigidMotion{{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}, by}));
}

}  // namespace

TEST_CASE("gauss-legendre rules integrate polynomials exactly")
{
    for (std::size_t n : {1u, 2u, 7u, 32u}) {
        const QuadratureRule& r = gauss_legendre(n);
        CHECK(r.nodes.size() == n);
        for (std::size_t deg = 0; deg < 2 * n; ++deg) {
            const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
            double s = 0;
            for (std::size_t k = 0; k < n; ++k) {
                s += r.weights[k] * std::pow(r.nodes[k], static_cast<double>(deg));
            }
            CHECK(s == Approx(exact).epsilon(1e-13));
        }
    }
}

TEST_CASE("segment area integral")
{
    CHECK(segment_area_integral({1, 0, 0}, {0, 0, 1}, {0, 0, 1}) == Approx(1.0).epsilon(1e-15));
    CHECK(segment_area_integral({1, 0, 0}, {0, 0, 0}, {0, 0, 2}) == Approx(1.0).epsilon(1e-15));
    const double v = segment_area_integral({1, 0, 0}, {0, 1, 0}, {0, 0, 1});
    const double oracle = simpson_segment({1, 0, 0}, {0, 1, 0}, {0, 0, 1});
    CHECK(v == Approx(oracle).epsilon(1e-12));
    CHECK(v == Approx(0.811612).epsilon(1e-6));
    // Sign change of a collinear integrand.
    CHECK(segment_area_integral({1, 0, 0}, {0, -1, 0}, {0, 1, 0}) == Approx(0.5).epsilon(1e-15));
    CHECK(segment_area_integral({0, 0, 0}, {0, -1, 0}, {0, 1, 0}) == 0.0);
}

TEST_CASE("segment area integral matches Simpson on random data")
{
    std::mt19937_64 rng(2);
    for (int k = 0; k < 200; ++k) {
        const Vec3 e = fixtures::random_unit(rng) * fixtures::uniform(rng, 0.01, 3);
        const Vec3 w0 = fixtures::random_unit(rng) * fixtures::uniform(rng, 0, 2);
        Vec3 w1 = fixtures::random_unit(rng) * fixtures::uniform(rng, 0, 2);
        if (k % 4 == 0) {
            w1 = w0 + fixtures::random_unit(rng) * 1e-5;  // nearly constant integrand
        }
        const double got = segment_area_integral(e, w0, w1);
        CHECK(got == Approx(simpson_segment(e, w0, w1)).epsilon(1e-9));
    }
}

TEST_CASE("translation and homothety examples")
{
    CHECK(swept_area(translate(fixtures::square(0.5), {0, 0, 1})).total == Approx(4.0).epsilon(1e-13));
    const double perimeter = 128 * std::sin(kPi / 64);
    CHECK(swept_area(translate(fixtures::ngon(64, 1.0), {0, 0, 1})).total == Approx(perimeter).epsilon(1e-12));
    const SweptAreaResult h = swept_area(fixtures::homothety(fixtures::square(1.0), 2.0));
    CHECK(std::abs(h.total - 12.0) <= 1e-9);
    CHECK(h.per_interval.size() == 1);
    CHECK(h.per_face_max == Approx(3.0).epsilon(1e-12));
}

TEST_CASE("circle homotheties converge quadratically")
{
    double prev_err = 0;
    for (std::size_t n : {16u, 32u, 64u, 128u}) {
        const double exact = 3.0 * (n / 2.0) * std::sin(2 * kPi / n);
        const double a = swept_area(fixtures::homothety(fixtures::ngon(n, 1.0), 2.0)).total;
        CHECK(std::abs(a - exact) <= 1e-9);
        const double err = std::abs(a - 3 * kPi);
        if (prev_err > 0) {
            CHECK(prev_err / err == Approx(4.0).epsilon(0.01));
        }
        prev_err = err;
    }
    CHECK(prev_err / (3 * kPi) < 5e-4);
}

TEST_CASE("path construction errors")
{
    const PolygonalKnot sq = fixtures::square(1.0);
    CHECK_THROWS_AS(IsotopyPath({sq}, {0.0}), ValidationError);
    CHECK_THROWS_AS(IsotopyPath({sq, sq}, {0.0, 0.5}), ValidationError);
    CHECK_THROWS_AS(IsotopyPath({sq, sq, sq}, {0.0, 0.5, 0.5}), ValidationError);
    CHECK_THROWS_AS(IsotopyPath({sq, fixtures::ngon(5, 1)}, {0.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(concatenate(IsotopyPath::constant(sq), IsotopyPath::constant(sq.scaled(2))), ValidationError);
    CHECK_THROWS_AS(refine(IsotopyPath::constant(sq), 0), ValidationError);
}

TEST_CASE("reverse, concatenate and refine")
{
    std::mt19937_64 rng(8);
    for (int k = 0; k < 40; ++k) {
        const PolygonalKnot start = fixtures::random_knot(rng, 5 + rng() % 10);
        const IsotopyPath p1 = fixtures::random_path(rng, start, 1 + rng() % 3, 0.3);
        const IsotopyPath p2 = fixtures::random_path(rng, p1.back(), 1 + rng() % 3, 0.3);
        const double a1 = swept_area(p1).total;
        const double a2 = swept_area(p2).total;
        CHECK(a1 >= 0.0);
        CHECK(std::abs(swept_area(reverse(p1)).total - a1) <= 1e-10);
        CHECK(std::abs(swept_area(concatenate(p1, p2)).total - (a1 + a2)) <= 1e-10);
        const IsotopyPath twice = reverse(reverse(p1));
        CHECK(twice.keyframes() == p1.keyframes());
        REQUIRE(twice.times().size() == p1.times().size());
        for (std::size_t k = 0; k < p1.times().size(); ++k) {
            CHECK(std::abs(twice.times()[k] - p1.times()[k]) <= 1e-15);
        }
        CHECK(std::abs(swept_area(concatenate(p1, IsotopyPath::constant(p1.back()))).total - a1) <= 1e-10);
        const SweptAreaResult r = swept_area(refine(p1, 4));
        CHECK(std::abs(r.total - a1) <= 1e-10);
        CHECK(r.per_interval.size() == 4 * p1.interval_count());
        double sum = 0;
        for (double x : r.per_interval) {
            sum += x;
        }
        CHECK(sum == Approx(r.total).epsilon(1e-14));
    }
    const IsotopyPath p = translate(fixtures::square(0.5), {0, 0, 1});
    CHECK(refine(p, 1).keyframes() == p.keyframes());
    CHECK(swept_area(refine(p, 4)).total == Approx(4.0).epsilon(1e-12));
}

TEST_CASE("restrict_path splits area additively")
{
    std::mt19937_64 rng(4);
    const IsotopyPath p = fixtures::random_path(rng, fixtures::random_knot(rng, 9), 3, 0.2);
    const double total = swept_area(p).total;
    const double a = swept_area(restrict_path(p, 0.0, 0.37)).total;
    const double b = swept_area(restrict_path(p, 0.37, 1.0)).total;
    CHECK(std::abs(a + b - total) <= 1e-10);
    CHECK_THROWS_AS(restrict_path(p, 0.5, 0.5), ValidationError);
}

TEST_CASE("Euclidean invariance of swept area")
{
    std::mt19937_64 rng(12);
    for (int k = 0; k < 30; ++k) {
        const IsotopyPath p = fixtures::random_path(rng, fixtures::random_knot(rng, 6 + rng() % 8), 2, 0.3);
        const double a = swept_area(p).total;
        CHECK(std::abs(swept_area(p.transformed(fixtures::random_motion(rng))).total - a) <= 1e-9);
    }
}

TEST_CASE("infinitesimal seminorm")
{
    const PolygonalKnot sq = fixtures::square(1.0);
    std::vector<Vec3> up(4, Vec3{0, 0, 1});
    CHECK(infinitesimal_seminorm(sq, up) == Approx(8.0).epsilon(1e-15));
    CHECK(infinitesimal_seminorm(sq, std::vector<Vec3>(4)) == 0.0);
    std::vector<Vec3> one(4);
    one[2] = {0, 0, 1};
    CHECK(infinitesimal_seminorm(sq, one) == Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(infinitesimal_seminorm(sq, std::vector<Vec3>(3)), ValidationError);
}

TEST_CASE("swept area over a short interval approaches the seminorm")
{
    std::mt19937_64 rng(13);
    for (int k = 0; k < 20; ++k) {
        const PolygonalKnot p = fixtures::random_knot(rng, 7);
        std::vector<Vec3> w(p.size());
        std::vector<Vec3> moved(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            w[i] = fixtures::random_unit(rng);
            moved[i] = p[i] + w[i] * 1e-4;
        }
        const double a = swept_area(IsotopyPath::linear(p, PolygonalKnot(moved))).total;
        CHECK(a / 1e-4 == Approx(infinitesimal_seminorm(p, w)).epsilon(1e-3));
    }
}

TEST_CASE("seminorm is positive on non-collinear polygons")
{
    std::mt19937_64 rng(14);
    double smallest = 1e300;
    for (int k = 0; k < 30; ++k) {
        const PolygonalKnot p = fixtures::random_noncollinear(rng, 6 + rng() % 6, 0.2);
        for (int j = 0; j < 30; ++j) {
            std::vector<Vec3> w(p.size());
            double n2 = 0;
            for (Vec3& x : w) {
                x = Vec3{fixtures::uniform(rng, -1, 1), fixtures::uniform(rng, -1, 1), fixtures::uniform(rng, -1, 1)};
                n2 += norm2(x);
            }
            for (Vec3& x : w) {
                x = x / std::sqrt(n2);
            }
            smallest = std::min(smallest, infinitesimal_seminorm(p, w));
        }
    }
    CHECK(smallest > 1e-4);
}
