#include "ropesweep/corpus.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "ropesweep/errors.hpp"

namespace ropesweep {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class Params {
public:
    Params(const CorpusSpec& spec, std::set<std::string> known) : spec_(spec)
    {
        for (const auto& [name, value] : spec.parameters) {
            if (!known.count(name)) {
                throw ValidationError(std::string("generate: unknown parameter '") + name + "' for " +
                                      to_string(spec.family));
            }
            if (!std::isfinite(value)) {
                throw ValidationError("generate: parameter '" + name + "' is not finite");
            }
        }
    }

    double real(const std::string& name, double fallback) const
    {
        const auto it = spec_.parameters.find(name);
        return it == spec_.parameters.end() ? fallback : it->second;
    }

    std::size_t count(const std::string& name, std::size_t fallback, std::size_t minimum) const
    {
        const double v = real(name, static_cast<double>(fallback));
        if (v != std::floor(v) || v < static_cast<double>(minimum) || v > 1e7) {
            throw ValidationError("generate: parameter '" + name + "' must be an integer >= " +
                                  std::to_string(minimum));
        }
        return static_cast<std::size_t>(v);
    }

    double positive(const std::string& name, double fallback) const
    {
        const double v = real(name, fallback);
        if (!(v > 0.0)) {
            throw ValidationError("generate: parameter '" + name + "' must be positive");
        }
        return v;
    }

private:
    const CorpusSpec& spec_;
};

std::vector<Vec3> ngon(std::size_t n, double rx, double ry)
{
    std::vector<Vec3> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double phi = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
        v[i] = {rx * std::cos(phi), ry * std::sin(phi), 0.0};
    }
    return v;
}

}  // namespace

const char* to_string(CorpusFamily f)
{
    switch (f) {
    case CorpusFamily::RegularNGon:
        return "RegularNGon";
    case CorpusFamily::EllipseNGon:
        return "EllipseNGon";
    case CorpusFamily::SquareFamily:
        return "SquareFamily";
    case CorpusFamily::TrefoilPolygon:
        return "TrefoilPolygon";
    case CorpusFamily::RandomPerturbed:
        return "RandomPerturbed";
    }
    return "?";
}

std::optional<CorpusFamily> parse_family(const std::string& name)
{
    for (CorpusFamily f : {CorpusFamily::RegularNGon, CorpusFamily::EllipseNGon, CorpusFamily::SquareFamily,
                           CorpusFamily::TrefoilPolygon, CorpusFamily::RandomPerturbed}) {
        if (name == to_string(f)) {
            return f;
        }
    }
    return std::nullopt;
}

double unit_from_bits(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

PolygonalKnot generate(const CorpusSpec& spec)
{
    switch (spec.family) {
    case CorpusFamily::RegularNGon: {
        const Params p(spec, {"N", "r"});
        const double r = p.positive("r", 1.0);
        return PolygonalKnot(ngon(p.count("N", 64, 3), r, r));
    }
    case CorpusFamily::EllipseNGon: {
        const Params p(spec, {"N", "a", "b", "r"});
        const double a = p.positive("a", 2.0);
        const double b = p.positive("b", 1.5);
        if (a < b) {
            throw ValidationError("generate: EllipseNGon needs a >= b > 0");
        }
        const double r = p.positive("r", 1.0);
        return PolygonalKnot(ngon(p.count("N", 512, 3), r * a, r * b));
    }
    case CorpusFamily::SquareFamily: {
        const Params p(spec, {"side", "per_side"});
        const double h = 0.5 * p.positive("side", 2.0);
        const std::size_t m = p.count("per_side", 1, 1);
        const Vec3 corners[4] = {{h, h, 0}, {-h, h, 0}, {-h, -h, 0}, {h, -h, 0}};
        std::vector<Vec3> v;
        for (int c = 0; c < 4; ++c) {
            for (std::size_t k = 0; k < m; ++k) {
                v.push_back(lerp(corners[c], corners[(c + 1) % 4], static_cast<double>(k) / static_cast<double>(m)));
            }
        }
        return PolygonalKnot(std::move(v));
    }
    case CorpusFamily::TrefoilPolygon: {
        const Params p(spec, {"N", "scale"});
        const std::size_t n = p.count("N", 48, 12);
        const double s = p.positive("scale", 1.0);
        std::vector<Vec3> v(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
            v[i] = Vec3{std::sin(t) + 2.0 * std::sin(2.0 * t), std::cos(t) - 2.0 * std::cos(2.0 * t),
                        -std::sin(3.0 * t)} *
                   s;
        }
        return PolygonalKnot(std::move(v));
    }
    case CorpusFamily::RandomPerturbed: {
        const Params p(spec, {"N", "r", "amplitude"});
        const std::size_t n = p.count("N", 16, 3);
        const double r = p.positive("r", 1.0);
        const double amp = p.real("amplitude", 0.05);
        if (!(amp >= 0.0)) {
            throw ValidationError("generate: amplitude must be >= 0");
        }
        std::mt19937_64 rng(spec.seed);
        std::vector<Vec3> v = ngon(n, r, r);
        for (Vec3& q : v) {
            for (int c = 0; c < 3; ++c) {
                q[c] += amp * r * (2.0 * unit_from_bits(rng()) - 1.0);
            }
        }
        return PolygonalKnot(std::move(v));
    }
    }
    throw ValidationError("generate: unknown family");
}

}  // namespace ropesweep
