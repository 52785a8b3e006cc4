#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "ropesweep/geom.hpp"

namespace ropesweep {

enum class CorpusFamily { RegularNGon, EllipseNGon, SquareFamily, TrefoilPolygon, RandomPerturbed };

const char* to_string(CorpusFamily f);
/// Accepts the enumerator names ("RegularNGon", ...).
std::optional<CorpusFamily> parse_family(const std::string& name);

/// Parameters per family (defaults in brackets):
///   RegularNGon     N [64], r [1]
///   EllipseNGon     N [512], a [2], b [1.5], r [1]          (a >= b > 0)
///   SquareFamily    side [2], per_side [1]                  (per_side vertices per side)
///   TrefoilPolygon  N [48], scale [1]
///   RandomPerturbed N [16], r [1], amplitude [0.05]         (uses seed)
struct CorpusSpec {
    CorpusFamily family = CorpusFamily::RegularNGon;
    std::map<std::string, double> parameters;
    std::uint64_t seed = 0;
};

PolygonalKnot generate(const CorpusSpec& spec);

/// Uniform double in [0, 1) from a 64-bit engine output; identical on every platform.
double unit_from_bits(std::uint64_t bits);

}  // namespace ropesweep
