#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "ropesweep/errors.hpp"
#include "ropesweep/reidemeister.hpp"

using namespace ropesweep;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Crossing count of the xy-shadow by direct segment tests.
int shadow_crossings(const PolygonalKnot& p)
{
    const std::size_t n = p.size();
    auto orient = [](const Vec3& a, const Vec3& b, const Vec3& c) {
        return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    };
    int count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) {
                continue;
            }
            const Vec3 &a = p[i], &b = p.vertex(i + 1), &c = p[j], &d = p.vertex(j + 1);
            if (orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0) {
                ++count;
            }
        }
    }
    return count;
}

PolygonalKnot relabelled(const PolygonalKnot& p, std::size_t shift)
{
    std::vector<Vec3> v;
    for (std::size_t i = 0; i < p.size(); ++i) {
        v.push_back(p.vertex(i + shift));
    }
    return PolygonalKnot(v);
}

const Vec3 kUp{0, 0, 1};

}  // namespace

TEST_CASE("convex planar polygon has an empty diagram")
{
    const Diagram d = project(fixtures::ngon(12, 1), kUp);
    CHECK(d.crossings.empty());
    CHECK(d.gauss_code.empty());
}

TEST_CASE("trefoil diagram")
{
    const PolygonalKnot t = fixtures::trefoil(48);
    const Diagram d = project(t, kUp);
    CHECK(d.crossings.size() == 3);
    CHECK(shadow_crossings(t) == 3);
    REQUIRE(d.gauss_code.size() == 18);
    for (std::size_t k = 0; k < 6; ++k) {
        CHECK(d.gauss_code[3 * k] == (k % 2 == 0 ? 'O' : 'U'));
    }
    for (const Crossing& c : d.crossings) {
        CHECK(c.sign == d.crossings.front().sign);
        CHECK(edges_nonadjacent(c.over_edge, c.under_edge, t.size()));
    }
    // The mirror image flips every sign.
    std::vector<Vec3> mirror;
    for (const Vec3& v : t.vertices()) {
        mirror.push_back({v.x, v.y, -v.z});
    }
    const Diagram m = project(PolygonalKnot(mirror), kUp);
    CHECK(m.crossings.front().sign == -d.crossings.front().sign);
}

TEST_CASE("crossing counts match the shadow oracle on random knots")
{
    std::mt19937_64 rng(23);
    for (int k = 0; k < 30; ++k) {
        const PolygonalKnot p = fixtures::random_knot(rng, 10 + rng() % 20).transformed(fixtures::random_motion(rng));
        CHECK(static_cast<int>(project(p, kUp).crossings.size()) == shadow_crossings(p));
    }
}

TEST_CASE("non-generic projections are rejected")
{
    const PolygonalKnot sq = fixtures::square(1);
    CHECK_THROWS_AS(project(sq, Vec3{1, 0, 0}), NonGenericProjection);
    CHECK_THROWS_AS(project(sq, Vec3{0, 0, 2}), ValidationError);
    // A vertex lying over another edge.
    const PolygonalKnot touching({{0, 0, 0}, {2, 0, 0}, {2, 2, 0}, {1, 0, 1}, {0, 2, 0}});
    CHECK_THROWS_AS(project(touching, kUp), NonGenericProjection);
}

TEST_CASE("codes are invariant under relabelling and joint rotation")
{
    std::mt19937_64 rng(24);
    const PolygonalKnot t = fixtures::trefoil(36);
    const std::string code = project(t, kUp).gauss_code;
    for (std::size_t s : {1u, 7u, 20u}) {
        CHECK(project(relabelled(t, s), kUp).gauss_code == code);
    }
    for (int k = 0; k < 20; ++k) {
        const Vec3 u = fixtures::random_unit(rng);
        const RigidMotion m = fixtures::random_motion(rng);
        const std::string c1 = project(t, u).gauss_code;
        const std::string c2 = project(t.transformed(m), m.rotate(u)).gauss_code;
        CHECK(c1 == c2);
    }
}

TEST_CASE("event detection")
{
    CHECK(detect_events(IsotopyPath::constant(fixtures::trefoil(30)), kUp, 16).empty());

    const auto r1 = detect_events(fixtures::loop_removal(1.0), kUp, 64);
    REQUIRE(r1.size() == 1);
    CHECK(r1[0].kind == MoveKind::R1);
    CHECK(r1[0].crossing_delta == -1);
    CHECK(r1[0].time > 0.5);
    CHECK(r1[0].to_code.empty());

    const auto r2 = detect_events(fixtures::finger_pass(), kUp, 32);
    REQUIRE(r2.size() == 1);
    CHECK(r2[0].kind == MoveKind::R2);
    CHECK(r2[0].crossing_delta == 2);
    // Tip reaches the lower strand at y = -2, i.e. t = 3/4.
    CHECK(r2[0].time == Approx(0.75).epsilon(1e-8));

    // Coarse scanning still separates the events of a tumbling trefoil.
    const IsotopyPath tumble = fixtures::tumbling_trefoil({1, 0.3, 0.2}, 1.2, 13);
    for (const ReidemeisterEvent& e : detect_events(tumble, kUp, 8)) {
        CHECK(std::abs(e.crossing_delta) <= 2);
        CHECK((e.kind == MoveKind::R3) == (e.crossing_delta == 0));
        CHECK(e.from_code != e.to_code);
    }
}

TEST_CASE("graph construction and distances")
{
    const double rho = 1.0;
    const IsotopyPath loop = fixtures::loop_removal(rho);
    const std::vector<IsotopyPath> paths{loop};
    const DiagramGraph g = build_graph(paths, kUp);
    CHECK(g.nodes.size() == 2);
    REQUIRE(g.edges.size() == 1);
    const double total = swept_area(loop).total;
    CHECK(g.edges[0].weight <= total);
    CHECK(g.edges[0].weight >= 0.98 * kPi * rho * rho);
    CHECK(g.edges[0].t0 < g.edges[0].t1);

    const std::string start = project(loop.front(), kUp).gauss_code;
    const std::string end = project(loop.back(), kUp).gauss_code;
    CHECK(diagram_distance(g, start, start) == 0.0);
    CHECK(diagram_distance(g, start, end) == g.edges[0].weight);
    CHECK(diagram_distance(g, end, start) == g.edges[0].weight);
    CHECK_THROWS_AS(diagram_distance(g, start, "O9+"), ValidationError);

    // The same transition realized by a larger loop keeps the smaller weight.
    const std::vector<IsotopyPath> both{fixtures::loop_removal(1.5), loop};
    const DiagramGraph g2 = build_graph(both, kUp);
    REQUIRE(g2.edges.size() == 1);
    CHECK(g2.edges[0].weight == g.edges[0].weight);
    CHECK(g2.edges[0].path_index == 1);

    // Disconnected components.
    DiagramGraph g3 = g;
    g3.add_node("O1+U1+");
    CHECK(std::isinf(diagram_distance(g3, start, "O1+U1+")));

    CHECK_THROWS_AS(build_graph(paths, kUp, 64, 1.0), ValidationError);
}

TEST_CASE("diagrammatic distance is bounded by swept area")
{
    std::vector<IsotopyPath> paths{fixtures::loop_removal(0.7), fixtures::finger_pass(0.4),
                                   fixtures::tumbling_trefoil({1, 0.3, 0.2}, 1.2, 13),
                                   fixtures::tumbling_trefoil({0.2, 1, 0.5}, 2.0, 21)};
    for (const IsotopyPath& p : paths) {
        const std::vector<IsotopyPath> one{p};
        const DiagramGraph g = build_graph(one, kUp);
        const double d =
            diagram_distance(g, project(p.front(), kUp).gauss_code, project(p.back(), kUp).gauss_code);
        CHECK(d <= swept_area(p).total + 1e-9);
        for (const GraphEdge& e : g.edges) {
            CHECK(e.weight >= 0.0);
        }
    }
}
