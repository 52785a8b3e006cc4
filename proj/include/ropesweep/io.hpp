#pragma once

#include <string>

#include <json.hpp>

#include "ropesweep/calibration.hpp"
#include "ropesweep/isotopy.hpp"
#include "ropesweep/optimizer.hpp"
#include "ropesweep/reidemeister.hpp"
#include "ropesweep/thickness.hpp"

namespace ropesweep::io {

using nlohmann::json;

// Non-finite reals are written as null and read back as +inf.

json to_json(const PolygonalKnot& p);
json to_json(const IsotopyPath& path);
json to_json(const ThicknessBreakdown& t);
json to_json(const SweptAreaResult& s);
json to_json(const Bound& b);
json to_json(const OptimizeResult& r);
json to_json(const Diagram& d);
json to_json(const ReidemeisterEvent& e);
json to_json(const DiagramGraph& g);

PolygonalKnot knot_from_json(const json& j);
IsotopyPath isotopy_from_json(const json& j);
DiagramGraph graph_from_json(const json& j);

/// Parses a file; malformed content raises ValidationError naming the path.
json read_json_file(const std::string& path);

std::string dump(const json& j);

}  // namespace ropesweep::io
