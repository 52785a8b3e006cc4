#include "ropesweep/reidemeister.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <sstream>

#include "ropesweep/errors.hpp"
#include "ropesweep/thickness.hpp"

namespace ropesweep {

namespace {

struct P2 {
    double x = 0.0;
    double y = 0.0;
};

double cross2(const P2& a, const P2& b) { return a.x * b.y - a.y * b.x; }
P2 sub(const P2& a, const P2& b) { return {a.x - b.x, a.y - b.y}; }
double dist2d(const P2& a, const P2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double point_segment_distance(const P2& p, const P2& a, const P2& b)
{
    const P2 ab = sub(b, a);
    const P2 ap = sub(p, a);
    const double len2 = ab.x * ab.x + ab.y * ab.y;
    const double s = std::clamp((ap.x * ab.x + ap.y * ab.y) / len2, 0.0, 1.0);
    return dist2d(p, {a.x + s * ab.x, a.y + s * ab.y});
}

[[noreturn]] void non_generic(const std::string& what)
{
    throw NonGenericProjection("non-generic projection: " + what);
}

struct Passage {
    std::size_t edge;
    double param;
    std::size_t crossing;
    bool over;
};

std::string code_from(const std::vector<Passage>& seq, const std::vector<Crossing>& crossings, std::size_t start)
{
    const std::size_t m = seq.size();
    std::vector<int> label(crossings.size(), 0);
    int next = 1;
    std::string out;
    for (std::size_t k = 0; k < m; ++k) {
        const Passage& p = seq[(start + k) % m];
        if (label[p.crossing] == 0) {
            label[p.crossing] = next++;
        }
        out += p.over ? 'O' : 'U';
        out += std::to_string(label[p.crossing]);
        out += crossings[p.crossing].sign > 0 ? '+' : '-';
    }
    return out;
}

std::string canonical_code(const std::vector<Crossing>& crossings)
{
    if (crossings.empty()) {
        return "";
    }
    std::vector<Passage> seq;
    for (std::size_t c = 0; c < crossings.size(); ++c) {
        seq.push_back({crossings[c].over_edge, crossings[c].over_param, c, true});
        seq.push_back({crossings[c].under_edge, crossings[c].under_param, c, false});
    }
    std::sort(seq.begin(), seq.end(), [](const Passage& a, const Passage& b) {
        return a.edge != b.edge ? a.edge < b.edge : a.param < b.param;
    });
    std::string best;
    for (std::size_t s = 0; s < seq.size(); ++s) {
        std::string c = code_from(seq, crossings, s);
        if (s == 0 || c < best) {
            best = std::move(c);
        }
    }
    return best;
}

std::size_t crossing_count(const std::string& code)
{
    std::size_t n = 0;
    for (char c : code) {
        n += c == 'O' ? 1 : 0;
    }
    return n;
}

struct Probe {
    double time;
    Diagram diagram;
};

// Projects the slice at t, or at a nearby generic time inside (lo, hi).
std::optional<Probe> probe(const IsotopyPath& path, const Vec3& u, double t, double lo, double hi)
{
    try {
        return Probe{t, project(path.slice(t), u)};
    } catch (const NonGenericProjection&) {
    }
    const double width = hi - lo;
    static constexpr double kOffsets[] = {1e-3, 2e-3, 4e-3, 8e-3, 0.05, 0.1, 0.2, 0.3, 0.4, 0.45};
    for (double f : kOffsets) {
        for (int s : {1, -1}) {
            const double tt = t + s * width * f;
            if (tt <= lo || tt >= hi) {
                continue;
            }
            try {
                return Probe{tt, project(path.slice(tt), u)};
            } catch (const NonGenericProjection&) {
            }
        }
    }
    return std::nullopt;
}

constexpr double kEventResolution = 1e-9;

void localize(const IsotopyPath& path, const Vec3& u, const Probe& left, const Probe& right,
              std::vector<ReidemeisterEvent>& out)
{
    Probe l = left;
    Probe r = right;
    while (r.time - l.time > kEventResolution) {
        const double mid = 0.5 * (l.time + r.time);
        std::optional<Probe> m = probe(path, u, mid, l.time, r.time);
        if (!m) {
            // The whole bracket is non-generic: the move happens inside it.
            break;
        }
        if (m->diagram.gauss_code == l.diagram.gauss_code) {
            l = std::move(*m);
        } else if (m->diagram.gauss_code == r.diagram.gauss_code) {
            r = std::move(*m);
        } else {
            // Two or more moves in this cell; separate them.
            localize(path, u, l, *m, out);
            localize(path, u, *m, r, out);
            return;
        }
    }
    const int delta = static_cast<int>(crossing_count(r.diagram.gauss_code)) -
                      static_cast<int>(crossing_count(l.diagram.gauss_code));
    if (std::abs(delta) > 2) {
        std::ostringstream os;
        os.precision(17);
        os << "detect_events: crossing count jumps by " << delta << " near t = " << l.time
           << " (simultaneous moves)";
        throw NumericError(os.str());
    }
    ReidemeisterEvent e;
    e.time = 0.5 * (l.time + r.time);
    e.crossing_delta = delta;
    e.kind = std::abs(delta) == 1 ? MoveKind::R1 : (std::abs(delta) == 2 ? MoveKind::R2 : MoveKind::R3);
    e.from_code = l.diagram.gauss_code;
    e.to_code = r.diagram.gauss_code;
    out.push_back(std::move(e));
}

}  // namespace

const char* to_string(MoveKind kind)
{
    switch (kind) {
    case MoveKind::R1:
        return "R1";
    case MoveKind::R2:
        return "R2";
    case MoveKind::R3:
        return "R3";
    }
    return "?";
}

Diagram project(std::span<const Vec3> v, const Vec3& u)
{
    const double un = norm(u);
    if (!(std::abs(un - 1.0) <= 1e-9)) {
        throw ValidationError("project: direction u must be a unit vector");
    }
    const std::size_t n = v.size();
    Vec3 e1, e2;
    plane_frame(u, e1, e2);
    std::vector<P2> q(n);
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i) {
        q[i] = {dot(v[i], e1), dot(v[i], e2)};
        h[i] = dot(v[i], u);
    }
    const double eps = kGenericTolerance;
    for (std::size_t i = 0; i < n; ++i) {
        if (dist2d(q[i], q[(i + 1) % n]) < eps) {
            non_generic("edge " + std::to_string(i) + " is parallel to u");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (dist2d(q[i], q[j]) < eps) {
                non_generic("vertices " + std::to_string(i) + " and " + std::to_string(j) + " project together");
            }
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t k1 = (k + 1) % n;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || i == k1) {
                continue;
            }
            if (point_segment_distance(q[i], q[k], q[k1]) < eps) {
                non_generic("vertex " + std::to_string(i) + " projects onto edge " + std::to_string(k));
            }
        }
    }

    Diagram d;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!edges_nonadjacent(i, j, n)) {
                continue;
            }
            const P2 a0 = q[i], a1 = q[(i + 1) % n];
            const P2 b0 = q[j], b1 = q[(j + 1) % n];
            const P2 ra = sub(a1, a0);
            const P2 rb = sub(b1, b0);
            const double denom = cross2(ra, rb);
            if (denom == 0.0) {
                continue;  // parallel; overlaps were excluded by the vertex tests
            }
            const P2 w = sub(b0, a0);
            const double s = cross2(w, rb) / denom;
            const double t = cross2(w, ra) / denom;
            if (s <= 0.0 || s >= 1.0 || t <= 0.0 || t >= 1.0) {
                continue;
            }
            if (std::abs(denom) < eps * std::hypot(ra.x, ra.y) * std::hypot(rb.x, rb.y)) {
                non_generic("edges " + std::to_string(i) + " and " + std::to_string(j) + " cross tangentially");
            }
            const double hi = h[i] + s * (h[(i + 1) % n] - h[i]);
            const double hj = h[j] + t * (h[(j + 1) % n] - h[j]);
            if (std::abs(hi - hj) < eps) {
                non_generic("edges " + std::to_string(i) + " and " + std::to_string(j) + " meet in space");
            }
            Crossing c;
            const bool i_over = hi > hj;
            c.over_edge = i_over ? i : j;
            c.under_edge = i_over ? j : i;
            c.over_param = i_over ? s : t;
            c.under_param = i_over ? t : s;
            const double orient = i_over ? denom : -denom;
            c.sign = orient > 0.0 ? 1 : -1;
            c.x = a0.x + s * ra.x;
            c.y = a0.y + s * ra.y;
            d.crossings.push_back(c);
        }
    }
    for (std::size_t a = 0; a < d.crossings.size(); ++a) {
        for (std::size_t b = a + 1; b < d.crossings.size(); ++b) {
            if (std::hypot(d.crossings[a].x - d.crossings[b].x, d.crossings[a].y - d.crossings[b].y) < eps) {
                non_generic("triple point near (" + std::to_string(d.crossings[a].x) + ", " +
                            std::to_string(d.crossings[a].y) + ")");
            }
        }
    }
    d.gauss_code = canonical_code(d.crossings);
    return d;
}

Diagram project(const PolygonalKnot& p, const Vec3& u) { return project(p.vertices(), u); }

std::vector<ReidemeisterEvent> detect_events(const IsotopyPath& path, const Vec3& u, std::size_t time_resolution)
{
    if (time_resolution < 1) {
        throw ValidationError("detect_events: time_resolution must be positive");
    }
    std::vector<Probe> samples;
    samples.push_back({0.0, project(path.front(), u)});
    const double cell = 1.0 / static_cast<double>(time_resolution);
    for (std::size_t k = 1; k < time_resolution; ++k) {
        const double t = static_cast<double>(k) * cell;
        std::optional<Probe> p = probe(path, u, t, t - 0.5 * cell, t + 0.5 * cell);
        if (!p) {
            throw NumericError("detect_events: no generic time near sample " + std::to_string(k));
        }
        samples.push_back(std::move(*p));
    }
    samples.push_back({1.0, project(path.back(), u)});

    std::vector<ReidemeisterEvent> events;
    for (std::size_t k = 0; k + 1 < samples.size(); ++k) {
        if (samples[k].diagram.gauss_code != samples[k + 1].diagram.gauss_code) {
            localize(path, u, samples[k], samples[k + 1], events);
        }
    }
    return events;
}

bool DiagramGraph::has_node(const std::string& code) const
{
    return std::binary_search(nodes.begin(), nodes.end(), code);
}

void DiagramGraph::add_node(const std::string& code)
{
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), code);
    if (it == nodes.end() || *it != code) {
        nodes.insert(it, code);
    }
}

DiagramGraph build_graph(std::span<const IsotopyPath> paths, const Vec3& u, std::size_t time_resolution,
                         std::optional<double> lambda)
{
    DiagramGraph g;
    std::map<std::pair<std::string, std::string>, std::size_t> index;
    for (std::size_t p = 0; p < paths.size(); ++p) {
        const IsotopyPath& path = paths[p];
        if (lambda) {
            const AdmissibilityReport rep =
                check_admissible(path, *lambda, std::max<std::size_t>(33, path.keyframe_count()));
            if (!rep.admissible) {
                std::ostringstream os;
                os.precision(17);
                os << "build_graph: path " << p << " is not admissible at lambda = " << *lambda;
                if (const auto f = rep.first_failure()) {
                    os << " (first failure at t = " << f->time << ")";
                }
                throw ValidationError(os.str());
            }
        }
        const std::vector<ReidemeisterEvent> events = detect_events(path, u, time_resolution);
        g.add_node(project(path.front(), u).gauss_code);
        g.add_node(project(path.back(), u).gauss_code);
        for (std::size_t k = 0; k < events.size(); ++k) {
            const ReidemeisterEvent& e = events[k];
            const double before = k == 0 ? 0.0 : events[k - 1].time;
            const double after = k + 1 == events.size() ? 1.0 : events[k + 1].time;
            const double t0 = 0.5 * (before + e.time);
            const double t1 = 0.5 * (e.time + after);
            const double w = swept_area(restrict_path(path, t0, t1)).total;
            g.add_node(e.from_code);
            g.add_node(e.to_code);
            auto key = std::minmax(e.from_code, e.to_code);
            const auto found = index.find({key.first, key.second});
            if (found == index.end()) {
                index[{key.first, key.second}] = g.edges.size();
                g.edges.push_back({e.from_code, e.to_code, w, t0, t1, p});
            } else if (w < g.edges[found->second].weight) {
                g.edges[found->second] = {e.from_code, e.to_code, w, t0, t1, p};
            }
        }
    }
    return g;
}

double diagram_distance(const DiagramGraph& g, const std::string& d0, const std::string& d1)
{
    std::map<std::string, std::size_t> id;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        id[g.nodes[i]] = i;
    }
    for (const std::string* code : {&d0, &d1}) {
        if (!id.count(*code)) {
            throw ValidationError("diagram_distance: unknown node \"" + *code + "\"");
        }
    }
    std::vector<std::vector<std::pair<std::size_t, double>>> adj(g.nodes.size());
    for (const GraphEdge& e : g.edges) {
        const auto a = id.find(e.from);
        const auto b = id.find(e.to);
        if (a == id.end() || b == id.end()) {
            throw ValidationError("diagram_distance: edge references an unknown node");
        }
        if (e.weight < 0.0) {
            throw ValidationError("diagram_distance: negative edge weight");
        }
        adj[a->second].push_back({b->second, e.weight});
        adj[b->second].push_back({a->second, e.weight});
    }
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(g.nodes.size(), inf);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[id[d0]] = 0.0;
    heap.push({0.0, id[d0]});
    while (!heap.empty()) {
        const auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[v]) {
            continue;
        }
        for (const auto& [w, len] : adj[v]) {
            if (d + len < dist[w]) {
                dist[w] = d + len;
                heap.push({dist[w], w});
            }
        }
    }
    return dist[id[d1]];
}

}  // namespace ropesweep
