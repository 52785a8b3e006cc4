#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ropesweep/isotopy.hpp"

namespace fixtures {

using ropesweep::IsotopyPath;
using ropesweep::PolygonalKnot;
using ropesweep::RigidMotion;
using ropesweep::Vec3;

std::vector<Vec3> ngon_vertices(std::size_t n, double r, double z = 0.0);
PolygonalKnot ngon(std::size_t n, double r);
/// Regular n-gon whose polygonal thickness is exactly r.
PolygonalKnot thick_ngon(std::size_t n, double r);
PolygonalKnot square(double half_side);
PolygonalKnot ellipse(std::size_t n, double a, double b);
PolygonalKnot trefoil(std::size_t n, double scale = 1.0);

/// Random closed polygon near a circle with random z-wiggle; always valid.
PolygonalKnot random_knot(std::mt19937_64& rng, std::size_t n);
/// Random polygon with every exterior angle in [eta, pi - eta].
PolygonalKnot random_noncollinear(std::mt19937_64& rng, std::size_t n, double eta);
RigidMotion random_motion(std::mt19937_64& rng);
Vec3 random_unit(std::mt19937_64& rng);
double uniform(std::mt19937_64& rng, double lo, double hi);

/// Keyframed random path with `intervals` intervals starting at `start`.
IsotopyPath random_path(std::mt19937_64& rng, const PolygonalKnot& start, std::size_t intervals, double step);

/// Planar homothety p -> s p for s from 1 to scale.
IsotopyPath homothety(const PolygonalKnot& p, double scale, std::size_t intervals = 1);

/// A curve with a projected loop of radius rho (viewed along z) that is held
/// until t = 1/2 and then shrunk away, giving exactly one R1 move.
IsotopyPath loop_removal(double rho, std::size_t samples = 96);

/// A finger at height 1 pushed across a planar strand, giving one R2 move.
IsotopyPath finger_pass(double width = 0.3);

/// Rigid rotation of a trefoil in small keyframe steps.
IsotopyPath tumbling_trefoil(const Vec3& axis, double angle, std::size_t keyframes);

/// Brute-force doubly-critical self-distance: dense sampling on every pair of
/// closed non-adjacent edges, discrete local minima along the curve in both
/// arguments, then nested golden-section refinement.
double dcsd_oracle(const std::vector<Vec3>& v, int samples_per_edge);

}  // namespace fixtures
