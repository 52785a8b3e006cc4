#include "ropesweep/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "ropesweep/errors.hpp"

namespace ropesweep::io {

namespace {

json real(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double read_real(const json& j)
{
    if (j.is_null()) {
        return std::numeric_limits<double>::infinity();
    }
    if (!j.is_number()) {
        throw ValidationError("expected a number, got " + j.dump());
    }
    return j.get<double>();
}

json vec(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 read_vec(const json& j)
{
    if (!j.is_array() || j.size() != 3) {
        throw ValidationError("expected a coordinate triple, got " + j.dump());
    }
    return {read_real(j[0]), read_real(j[1]), read_real(j[2])};
}

json curve_point(const CurvePoint& c) { return json{{"edge", c.edge}, {"param", c.param}}; }

const json& field(const json& j, const char* name)
{
    if (!j.is_object() || !j.contains(name)) {
        throw ValidationError(std::string("missing field '") + name + "'");
    }
    return j.at(name);
}

}  // namespace

json to_json(const PolygonalKnot& p)
{
    json v = json::array();
    for (const Vec3& q : p.vertices()) {
        v.push_back(vec(q));
    }
    return json{{"vertices", v}};
}

json to_json(const IsotopyPath& path)
{
    json frames = json::array();
    for (const PolygonalKnot& k : path.keyframes()) {
        frames.push_back(to_json(k));
    }
    return json{{"times", path.times()}, {"keyframes", frames}};
}

json to_json(const ThicknessBreakdown& t)
{
    json j{{"min_rad", real(t.min_rad)}, {"half_dcsd", real(t.half_dcsd)}, {"thickness", real(t.thickness)}};
    j["argmin_vertex"] = t.argmin_vertex ? json(*t.argmin_vertex) : json(nullptr);
    j["argmin_pair"] = t.argmin_pair ? json::array({curve_point(t.argmin_pair->first), curve_point(t.argmin_pair->second)})
                                     : json(nullptr);
    return j;
}

json to_json(const SweptAreaResult& s)
{
    return json{{"total", s.total}, {"per_interval", s.per_interval}, {"per_face_max", s.per_face_max}};
}

json to_json(const Bound& b)
{
    json j{{"value", real(b.value)}, {"kind", to_string(b.kind)}, {"witness", b.witness}};
    j["plane_normal"] = b.plane_normal ? vec(*b.plane_normal) : json(nullptr);
    return j;
}

json to_json(const OptimizeResult& r)
{
    return json{{"upper_bound", real(r.upper_bound)},
                {"kind", "UpperBound"},
                {"admissible", r.admissible},
                {"constraint_violation_max", real(r.constraint_violation_max)},
                {"iterations", r.iterations},
                {"converged", r.converged},
                {"path", to_json(r.path)}};
}

json to_json(const Diagram& d)
{
    json cs = json::array();
    for (const Crossing& c : d.crossings) {
        cs.push_back(json{{"over_edge", c.over_edge},
                          {"under_edge", c.under_edge},
                          {"sign", c.sign},
                          {"position", json::array({c.x, c.y})}});
    }
    return json{{"gauss_code", d.gauss_code}, {"crossing_count", d.crossings.size()}, {"crossings", cs}};
}

json to_json(const ReidemeisterEvent& e)
{
    return json{{"time", e.time},
                {"kind", to_string(e.kind)},
                {"crossing_delta", e.crossing_delta},
                {"from", e.from_code},
                {"to", e.to_code}};
}

json to_json(const DiagramGraph& g)
{
    json edges = json::array();
    for (const GraphEdge& e : g.edges) {
        edges.push_back(json{{"from", e.from},
                             {"to", e.to},
                             {"weight", e.weight},
                             {"witness_interval", json::array({e.t0, e.t1})},
                             {"path_index", e.path_index}});
    }
    return json{{"nodes", g.nodes}, {"edges", edges}};
}

PolygonalKnot knot_from_json(const json& j)
{
    const json& vs = field(j, "vertices");
    if (!vs.is_array()) {
        throw ValidationError("'vertices' must be an array");
    }
    std::vector<Vec3> v;
    v.reserve(vs.size());
    for (const json& q : vs) {
        v.push_back(read_vec(q));
    }
    return PolygonalKnot(std::move(v));
}

IsotopyPath isotopy_from_json(const json& j)
{
    const json& ts = field(j, "times");
    const json& ks = field(j, "keyframes");
    if (!ts.is_array() || !ks.is_array()) {
        throw ValidationError("'times' and 'keyframes' must be arrays");
    }
    std::vector<double> times;
    for (const json& t : ts) {
        times.push_back(read_real(t));
    }
    std::vector<PolygonalKnot> frames;
    for (const json& k : ks) {
        frames.push_back(knot_from_json(k));
    }
    return IsotopyPath(std::move(frames), std::move(times));
}

DiagramGraph graph_from_json(const json& j)
{
    DiagramGraph g;
    for (const json& n : field(j, "nodes")) {
        if (!n.is_string()) {
            throw ValidationError("graph nodes must be strings");
        }
        g.add_node(n.get<std::string>());
    }
    for (const json& e : field(j, "edges")) {
        GraphEdge edge;
        edge.from = field(e, "from").get<std::string>();
        edge.to = field(e, "to").get<std::string>();
        edge.weight = read_real(field(e, "weight"));
        if (e.contains("witness_interval") && e["witness_interval"].size() == 2) {
            edge.t0 = read_real(e["witness_interval"][0]);
            edge.t1 = read_real(e["witness_interval"][1]);
        }
        if (e.contains("path_index")) {
            edge.path_index = e["path_index"].get<std::size_t>();
        }
        g.edges.push_back(std::move(edge));
    }
    return g;
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError("'" + path + "': " + e.what());
    }
}

std::string dump(const json& j) { return j.dump(2); }

}  // namespace ropesweep::io
