#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ropesweep/calibration.hpp"
#include "ropesweep/isotopy.hpp"

namespace ropesweep {

struct OptimizeConfig {
    double lambda = 0.0;
    std::size_t keyframe_count = 8;
    /// Uniform admissibility samples; raised to the keyframe count if smaller.
    std::size_t time_samples = 33;
    double penalty_weight_initial = 10.0;
    double penalty_growth = 10.0;
    std::size_t max_outer_iters = 6;
    std::size_t max_inner_iters = 200;
    double step_tolerance = 1e-10;
    double objective_tolerance = 1e-12;
    std::uint64_t seed = 0;

    void validate() const;
};

struct OptimizeResult {
    IsotopyPath path;
    /// swept_area(path).total; an upper bound on the distance only when admissible.
    double upper_bound = 0.0;
    bool admissible = false;
    double constraint_violation_max = 0.0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Locally minimizes swept area over keyframe paths from g0 to g1 whose
/// sampled slices satisfy thickness >= 1 and length <= lambda. Endpoints are
/// frozen. Throws ValidationError when an endpoint is inadmissible.
///
/// With an admissible warm start the returned bound never exceeds the warm
/// start's swept area.
OptimizeResult minimize_sweep(const PolygonalKnot& g0, const PolygonalKnot& g1, const OptimizeConfig& cfg,
                              const IsotopyPath* warm_start = nullptr);

/// Optimizes a based loop at `base`, starting from `seed_loop`.
OptimizeResult loop_cost(const PolygonalKnot& base, const IsotopyPath& seed_loop, const OptimizeConfig& cfg);

struct MergeCostResult {
    Bound bound;
    std::optional<OptimizeResult> best;
    std::size_t index0 = 0;
    std::size_t index1 = 0;
};

/// Minimum over representative pairs of minimize_sweep upper bounds.
MergeCostResult merge_cost(std::span<const PolygonalKnot> set0, std::span<const PolygonalKnot> set1,
                           const OptimizeConfig& cfg, const MergeCostResult* warm = nullptr);

/// Bisection on lambda for optimizer feasibility; returns an upper bound on
/// the merge scale. Stops at relative bracket width 1e-3.
double merge_scale_upper(const PolygonalKnot& g0, const PolygonalKnot& g1, double lambda_lo, double lambda_hi,
                         const OptimizeConfig& cfg);

struct LambdaSweepPoint {
    double lambda = 0.0;
    double upper_bound = 0.0;  ///< +inf when no admissible path was found
    bool admissible = false;
};

/// Warm-started bounds over increasing levels, post-processed to be nonincreasing.
std::vector<LambdaSweepPoint> lambda_sweep(const PolygonalKnot& g0, const PolygonalKnot& g1,
                                           std::span<const double> levels, const OptimizeConfig& cfg);

}  // namespace ropesweep
