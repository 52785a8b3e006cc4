#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ropesweep/calibration.hpp"
#include "ropesweep/corpus.hpp"
#include "ropesweep/errors.hpp"
#include "ropesweep/io.hpp"
#include "ropesweep/optimizer.hpp"
#include "ropesweep/reidemeister.hpp"
#include "ropesweep/thickness.hpp"

namespace py = pybind11;
namespace rs = ropesweep;

namespace {

using Triple = std::array<double, 3>;

rs::Vec3 vec(const Triple& t) { return {t[0], t[1], t[2]}; }

std::vector<rs::Vec3> vecs(const std::vector<Triple>& ts)
{
    std::vector<rs::Vec3> out;
    out.reserve(ts.size());
    for (const Triple& t : ts) {
        out.push_back(vec(t));
    }
    return out;
}

std::vector<Triple> triples(const rs::PolygonalKnot& p)
{
    std::vector<Triple> out;
    for (const rs::Vec3& v : p.vertices()) {
        out.push_back({v.x, v.y, v.z});
    }
    return out;
}

// Round-trips through the JSON schema so Python sees plain dicts.
py::object to_py(const rs::io::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

rs::IsotopyPath make_path(const std::vector<rs::PolygonalKnot>& keyframes, std::vector<double> times)
{
    if (times.empty()) {
        return rs::IsotopyPath::uniform(keyframes);
    }
    return rs::IsotopyPath(keyframes, std::move(times));
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Polygonal knot thickness, swept area, calibration bounds and Reidemeister graphs";

    py::register_exception<rs::ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<rs::NumericError>(m, "NumericError", PyExc_RuntimeError);

    py::class_<rs::PolygonalKnot>(m, "Knot")
        .def(py::init([](const std::vector<Triple>& v) { return rs::PolygonalKnot(vecs(v)); }), py::arg("vertices"))
        .def_property_readonly("vertices", &triples)
        .def("__len__", &rs::PolygonalKnot::size)
        .def("scaled", &rs::PolygonalKnot::scaled)
        .def("reversed", &rs::PolygonalKnot::reversed)
        .def("to_json", [](const rs::PolygonalKnot& p) { return to_py(rs::io::to_json(p)); });

    m.def("length", [](const rs::PolygonalKnot& p) { return rs::length(p); });
    m.def("total_curvature", &rs::total_curvature);
    m.def("thickness", [](const rs::PolygonalKnot& p) { return to_py(rs::io::to_json(rs::thickness(p))); });
    m.def("ropelength", &rs::ropelength);
    m.def("vector_area", [](const rs::PolygonalKnot& p) {
        const rs::Vec3 a = rs::vector_area(p);
        return Triple{a.x, a.y, a.z};
    });

    m.def(
        "swept_area",
        [](const std::vector<rs::PolygonalKnot>& keyframes, std::vector<double> times) {
            return to_py(rs::io::to_json(rs::swept_area(make_path(keyframes, std::move(times)))));
        },
        py::arg("keyframes"), py::arg("times") = std::vector<double>{});

    m.def("sup_plane_bound",
          [](const rs::PolygonalKnot& a, const rs::PolygonalKnot& b) { return to_py(rs::io::to_json(rs::sup_plane_bound(a, b))); });
    m.def("projected_area_bound", [](const rs::PolygonalKnot& a, const rs::PolygonalKnot& b, const Triple& n) {
        return to_py(rs::io::to_json(rs::projected_area_bound(a, b, rs::OrientedPlane::from_normal(vec(n)))));
    });

    m.def(
        "minimize_sweep",
        [](const rs::PolygonalKnot& a, const rs::PolygonalKnot& b, double lambda, std::size_t keyframes,
           std::size_t time_samples, std::uint64_t seed) {
            rs::OptimizeConfig cfg;
            cfg.lambda = lambda;
            cfg.keyframe_count = keyframes;
            cfg.time_samples = time_samples;
            cfg.seed = seed;
            std::optional<rs::OptimizeResult> r;
            {
                py::gil_scoped_release release;
                r = rs::minimize_sweep(a, b, cfg);
            }
            return to_py(rs::io::to_json(*r));
        },
        py::arg("start"), py::arg("end"), py::arg("lam"), py::arg("keyframes") = 8, py::arg("time_samples") = 33,
        py::arg("seed") = 0);

    m.def("gauss_code", [](const rs::PolygonalKnot& p, const Triple& u) { return rs::project(p, vec(u)).gauss_code; });
    m.def("diagram", [](const rs::PolygonalKnot& p, const Triple& u) { return to_py(rs::io::to_json(rs::project(p, vec(u)))); });

    m.def(
        "generate",
        [](const std::string& family, const std::map<std::string, double>& params, std::uint64_t seed) {
            const auto f = rs::parse_family(family);
            if (!f) {
                throw rs::ValidationError("unknown family '" + family + "'");
            }
            return rs::generate({*f, params, seed});
        },
        py::arg("family"), py::arg("params") = std::map<std::string, double>{}, py::arg("seed") = 0);
}
