#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ropesweep/isotopy.hpp"

namespace ropesweep {

/// Tolerance for every projected genericity test.
inline constexpr double kGenericTolerance = 1e-9;

struct Crossing {
    std::size_t over_edge = 0;
    std::size_t under_edge = 0;
    int sign = 1;
    double x = 0.0;  ///< position in the plane_frame(u) basis
    double y = 0.0;
    double over_param = 0.0;   ///< position along over_edge in [0,1]
    double under_param = 0.0;  ///< position along under_edge in [0,1]
};

struct Diagram {
    std::vector<Crossing> crossings;
    /// Signed Gauss code such as "O1+U2-...", relabelled by first appearance
    /// and minimized over cyclic rotations. Empty for a crossingless diagram.
    std::string gauss_code;
};

/// Projects along u (viewer on the +u side). Throws NonGenericProjection.
Diagram project(std::span<const Vec3> v, const Vec3& u);
Diagram project(const PolygonalKnot& p, const Vec3& u);

enum class MoveKind { R1, R2, R3 };
const char* to_string(MoveKind kind);

struct ReidemeisterEvent {
    double time = 0.0;
    MoveKind kind = MoveKind::R1;
    int crossing_delta = 0;
    std::string from_code;
    std::string to_code;
};

/// Scans time_resolution uniform cells, bisecting each code change down to
/// 1e-9 or to a bracket with no generic interior time. Cells holding several
/// moves are split; a jump with |delta| > 2 throws NumericError.
std::vector<ReidemeisterEvent> detect_events(const IsotopyPath& path, const Vec3& u, std::size_t time_resolution);

struct GraphEdge {
    std::string from;
    std::string to;
    double weight = 0.0;
    double t0 = 0.0;  ///< witness interval within path `path_index`
    double t1 = 0.0;
    std::size_t path_index = 0;
};

struct DiagramGraph {
    std::vector<std::string> nodes;  ///< sorted, unique
    std::vector<GraphEdge> edges;

    bool has_node(const std::string& code) const;
    void add_node(const std::string& code);
};

/// Weighted transition graph from the events of every path. Edge weights are
/// swept areas of the bracketing sub-paths, minimized over repeats. When
/// lambda is given every path must be admissible at that level.
DiagramGraph build_graph(std::span<const IsotopyPath> paths, const Vec3& u, std::size_t time_resolution = 64,
                         std::optional<double> lambda = std::nullopt);

/// Shortest weighted path; +inf when disconnected. Unknown codes throw.
double diagram_distance(const DiagramGraph& g, const std::string& d0, const std::string& d1);

}  // namespace ropesweep
