#include "ropesweep/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "ropesweep/errors.hpp"
#include "ropesweep/thickness.hpp"

namespace ropesweep {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFdStep = 1e-6;
constexpr double kArmijo = 1e-4;
// Internal constraint targets sit slightly inside the feasible set so that the
// residual violation of the quadratic penalty lands on the admissible side.
constexpr double kThicknessMargin = 1e-6;
constexpr double kLengthMargin = 1e-6;
// Slices thicker than target + this band cannot become active under a
// finite-difference perturbation, so their thickness is not re-evaluated.
constexpr double kActiveBand = 1e-3;

using Frames = std::vector<std::vector<Vec3>>;

struct Sample {
    std::size_t interval = 0;
    double alpha = 0.0;  // weight of the later keyframe
};

struct Evaluation {
    double objective = 0.0;
    double area = 0.0;
    double violation = 0.0;  // against the true constraints
    std::vector<std::vector<double>> faces;  // [interval][edge]
    std::vector<std::vector<Vec3>> slices;
    std::vector<double> slice_thickness;
    std::vector<double> slice_length;
};

class SweepProblem {
public:
    SweepProblem(std::vector<double> times, std::size_t vertex_count, const OptimizeConfig& cfg)
        : times_(std::move(times)), n_(vertex_count), lambda_(cfg.lambda)
    {
        const std::size_t samples = std::max(cfg.time_samples, times_.size());
        std::vector<double> ts(times_.begin(), times_.end());
        for (std::size_t k = 0; k < samples; ++k) {
            ts.push_back(samples == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(samples - 1));
        }
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
        // Endpoints are fixed and checked separately.
        for (double t : ts) {
            if (t <= 0.0 || t >= 1.0) {
                continue;
            }
            const auto it = std::upper_bound(times_.begin(), times_.end(), t);
            const std::size_t k = static_cast<std::size_t>(it - times_.begin()) - 1;
            samples_.push_back({k, (t - times_[k]) / (times_[k + 1] - times_[k])});
        }
    }

    std::size_t vertex_count() const { return n_; }
    const std::vector<double>& times() const { return times_; }

    double face(const Frames& f, std::size_t k, std::size_t i) const
    {
        const std::size_t j = (i + 1) % n_;
        const auto& a = f[k];
        const auto& b = f[k + 1];
        return face_sweep(a[j] - a[i], b[i] - a[i], b[j] - a[j], 1e-10 / static_cast<double>(n_));
    }

    double penalty(double thi, double len) const
    {
        const double t = std::max(0.0, 1.0 + kThicknessMargin - thi);
        const double l = std::max(0.0, len - lambda_ * (1.0 - kLengthMargin));
        return t * t + l * l;
    }

    double violation_of(double thi, double len) const
    {
        return std::max({0.0, 1.0 - thi, len - lambda_});
    }

    std::vector<Vec3> slice(const Frames& f, const Sample& s) const
    {
        std::vector<Vec3> out(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            out[i] = s.alpha == 0.0 ? f[s.interval][i] : lerp(f[s.interval][i], f[s.interval + 1][i], s.alpha);
        }
        return out;
    }

    Evaluation evaluate(const Frames& f, double weight) const
    {
        Evaluation e;
        const std::size_t intervals = f.size() - 1;
        e.faces.assign(intervals, std::vector<double>(n_, 0.0));
        for (std::size_t k = 0; k < intervals; ++k) {
            for (std::size_t i = 0; i < n_; ++i) {
                e.faces[k][i] = face(f, k, i);
                e.area += e.faces[k][i];
            }
        }
        double pen = 0.0;
        for (const Sample& s : samples_) {
            std::vector<Vec3> v = slice(f, s);
            const double thi = thickness(v).thickness;
            const double len = length(v);
            pen += penalty(thi, len);
            e.violation = std::max(e.violation, violation_of(thi, len));
            e.slice_thickness.push_back(thi);
            e.slice_length.push_back(len);
            e.slices.push_back(std::move(v));
        }
        e.objective = e.area + weight * pen;
        return e;
    }

    /// Central differences of the penalized objective, evaluated only on the
    /// terms that depend on each coordinate.
    std::vector<double> gradient(Frames& f, const Evaluation& e, double weight) const
    {
        const std::size_t kf = f.size();
        std::vector<double> g((kf - 2) * n_ * 3, 0.0);
        for (std::size_t k = 1; k + 1 < kf; ++k) {
            for (std::size_t i = 0; i < n_; ++i) {
                const std::size_t prev = (i + n_ - 1) % n_;
                for (int c = 0; c < 3; ++c) {
                    double side[2] = {0.0, 0.0};
                    for (int sgn = 0; sgn < 2; ++sgn) {
                        const double h = sgn == 0 ? kFdStep : -kFdStep;
                        const double saved = f[k][i][c];
                        f[k][i][c] = saved + h;
                        double local = face(f, k - 1, prev) + face(f, k - 1, i) + face(f, k, prev) + face(f, k, i);
                        f[k][i][c] = saved;
                        local += weight * penalty_shift(f, e, k, i, c, h);
                        side[sgn] = local;
                    }
                    g[((k - 1) * n_ + i) * 3 + static_cast<std::size_t>(c)] = (side[0] - side[1]) / (2.0 * kFdStep);
                }
            }
        }
        return g;
    }

private:
    // Sum of slice penalties that depend on keyframe k after moving vertex i
    // of that keyframe by h along axis c.
    double penalty_shift(const Frames& f, const Evaluation& e, std::size_t k, std::size_t i, int c, double h) const
    {
        (void)f;
        double total = 0.0;
        const std::size_t prev = (i + n_ - 1) % n_;
        const std::size_t next = (i + 1) % n_;
        for (std::size_t s = 0; s < samples_.size(); ++s) {
            const Sample& smp = samples_[s];
            double w = 0.0;
            if (smp.interval == k) {
                w = 1.0 - smp.alpha;
            } else if (smp.interval + 1 == k && smp.alpha > 0.0) {
                w = smp.alpha;
            } else {
                continue;
            }
            const auto& v = e.slices[s];
            Vec3 moved = v[i];
            moved[c] += w * h;
            const double len = e.slice_length[s] - distance(v[prev], v[i]) - distance(v[i], v[next]) +
                               distance(v[prev], moved) + distance(moved, v[next]);
            double thi = e.slice_thickness[s];
            if (thi < 1.0 + kThicknessMargin + kActiveBand) {
                std::vector<Vec3> shifted = v;
                shifted[i] = moved;
                thi = thickness(shifted).thickness;
            }
            total += penalty(thi, len);
        }
        return total;
    }

    std::vector<double> times_;
    std::size_t n_;
    double lambda_;
    std::vector<Sample> samples_;
};

double inf_norm(const std::vector<double>& g)
{
    double m = 0.0;
    for (double x : g) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

double dot_self(const std::vector<double>& g)
{
    double s = 0.0;
    for (double x : g) {
        s += x * x;
    }
    return s;
}

Frames step(const Frames& f, const std::vector<double>& g, double alpha, std::size_t n)
{
    Frames out = f;
    for (std::size_t k = 1; k + 1 < f.size(); ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (int c = 0; c < 3; ++c) {
                out[k][i][c] -= alpha * g[((k - 1) * n + i) * 3 + static_cast<std::size_t>(c)];
            }
        }
    }
    return out;
}

double mean_edge_length(const Frames& f)
{
    double total = 0.0;
    std::size_t count = 0;
    for (const auto& v : f) {
        total += length(v);
        count += v.size();
    }
    return count > 0 ? total / static_cast<double>(count) : 1.0;
}

std::optional<IsotopyPath> to_path(const Frames& f, const std::vector<double>& times)
{
    try {
        std::vector<PolygonalKnot> knots;
        knots.reserve(f.size());
        for (const auto& v : f) {
            knots.emplace_back(v);
        }
        return IsotopyPath(std::move(knots), times);
    } catch (const ValidationError&) {
        return std::nullopt;
    }
}

void require_endpoint(const PolygonalKnot& p, double lambda, const char* which)
{
    const double thi = thickness(p).thickness;
    const double len = length(p);
    if (!slice_ok(thi, len, lambda)) {
        std::ostringstream os;
        os.precision(17);
        os << which << " endpoint is not admissible at lambda = " << lambda << " (thickness " << thi
           << ", length " << len << ")";
        throw ValidationError(os.str());
    }
}

Frames initial_frames(const PolygonalKnot& g0, const PolygonalKnot& g1, std::size_t keyframes)
{
    const std::size_t n = g0.size();
    Frames f(keyframes, std::vector<Vec3>(n));
    for (std::size_t k = 0; k < keyframes; ++k) {
        const double s = static_cast<double>(k) / static_cast<double>(keyframes - 1);
        for (std::size_t i = 0; i < n; ++i) {
            f[k][i] = k == 0 ? g0[i] : (k + 1 == keyframes ? g1[i] : lerp(g0[i], g1[i], s));
        }
    }
    // Thickness scales linearly, so a uniform dilation about the centroid
    // restores thickness >= 1 on interior keyframes that dip below it.
    for (std::size_t k = 1; k + 1 < keyframes; ++k) {
        const double thi = thickness(f[k]).thickness;
        const double target = 1.0 + 2.0 * kThicknessMargin;
        if (thi > 0.0 && thi < target) {
            Vec3 centroid{};
            for (const Vec3& p : f[k]) {
                centroid += p;
            }
            centroid = centroid / static_cast<double>(n);
            const double factor = target / thi;
            for (Vec3& p : f[k]) {
                p = centroid + (p - centroid) * factor;
            }
        }
    }
    return f;
}

}  // namespace

void OptimizeConfig::validate() const
{
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw ValidationError("optimizer: lambda must be positive and finite");
    }
    if (keyframe_count < 2) {
        throw ValidationError("optimizer: keyframe_count must be >= 2");
    }
    if (time_samples < 1 || max_outer_iters < 1 || max_inner_iters < 1) {
        throw ValidationError("optimizer: counts must be positive");
    }
    if (!(penalty_weight_initial > 0.0) || !(penalty_growth > 1.0)) {
        throw ValidationError("optimizer: penalty weight must be positive and growth > 1");
    }
    if (!(step_tolerance > 0.0) || !(objective_tolerance > 0.0)) {
        throw ValidationError("optimizer: tolerances must be positive");
    }
}

OptimizeResult minimize_sweep(const PolygonalKnot& g0, const PolygonalKnot& g1, const OptimizeConfig& cfg,
                              const IsotopyPath* warm_start)
{
    cfg.validate();
    if (g0.size() != g1.size()) {
        throw ValidationError("minimize_sweep: endpoints have different vertex counts");
    }
    require_endpoint(g0, cfg.lambda, "start");
    require_endpoint(g1, cfg.lambda, "end");

    Frames frames;
    std::vector<double> times;
    if (warm_start != nullptr) {
        if (warm_start->vertex_count() != g0.size() || !(warm_start->front() == g0) || !(warm_start->back() == g1)) {
            throw ValidationError("minimize_sweep: warm start does not connect the given endpoints");
        }
        for (const PolygonalKnot& k : warm_start->keyframes()) {
            frames.emplace_back(k.vertices().begin(), k.vertices().end());
        }
        times = warm_start->times();
    } else {
        frames = initial_frames(g0, g1, cfg.keyframe_count);
        for (std::size_t k = 0; k < cfg.keyframe_count; ++k) {
            times.push_back(static_cast<double>(k) / static_cast<double>(cfg.keyframe_count - 1));
        }
        times.back() = 1.0;
    }

    const std::size_t n = g0.size();
    const SweepProblem problem(times, n, cfg);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> jitter(-1.0, 1.0);

    double weight = cfg.penalty_weight_initial;
    Evaluation eval = problem.evaluate(frames, weight);

    // Best admissible state seen, by swept area.
    std::optional<Frames> best;
    double best_area = kInf;
    auto consider = [&](const Frames& f, const Evaluation& e) {
        if (e.violation <= kAdmissibleSlack && e.area < best_area && to_path(f, times)) {
            best = f;
            best_area = e.area;
        }
    };
    consider(frames, eval);

    std::size_t iterations = 0;
    bool inner_converged = false;
    double alpha = -1.0;
    const double scale = mean_edge_length(frames);
    const bool has_interior = frames.size() > 2;

    for (std::size_t outer = 0; outer < cfg.max_outer_iters && has_interior; ++outer) {
        eval = problem.evaluate(frames, weight);
        bool jittered = false;
        inner_converged = false;
        for (std::size_t inner = 0; inner < cfg.max_inner_iters; ++inner) {
            ++iterations;
            std::vector<double> g = problem.gradient(frames, eval, weight);
            double gmax = inf_norm(g);
            if (gmax == 0.0) {
                if (!jittered && eval.objective > cfg.objective_tolerance) {
                    // Stuck on a kink of the norm: nudge once, deterministically.
                    jittered = true;
                    for (std::size_t k = 1; k + 1 < frames.size(); ++k) {
                        for (Vec3& p : frames[k]) {
                            p += Vec3{jitter(rng), jitter(rng), jitter(rng)} * (1e-6 * scale);
                        }
                    }
                    eval = problem.evaluate(frames, weight);
                    continue;
                }
                inner_converged = true;
                break;
            }
            if (alpha <= 0.0) {
                alpha = 0.1 * scale / gmax;
            }
            const double g2 = dot_self(g);
            bool accepted = false;
            while (alpha * gmax >= cfg.step_tolerance) {
                Frames trial = step(frames, g, alpha, n);
                Evaluation te = problem.evaluate(trial, weight);
                if (te.objective <= eval.objective - kArmijo * alpha * g2) {
                    const double decrease = eval.objective - te.objective;
                    frames = std::move(trial);
                    eval = std::move(te);
                    accepted = true;
                    if (decrease <= cfg.objective_tolerance * std::max(1.0, std::abs(eval.objective))) {
                        inner_converged = true;
                    }
                    alpha *= 2.0;
                    break;
                }
                alpha *= 0.5;
            }
            if (!accepted) {
                inner_converged = true;
                alpha = -1.0;
            }
            if (inner_converged) {
                break;
            }
        }
        consider(frames, eval);
        if (eval.violation <= kAdmissibleSlack) {
            break;
        }
        weight *= cfg.penalty_growth;
        alpha = -1.0;
    }

    OptimizeResult result{IsotopyPath::linear(g0, g1)};
    result.iterations = iterations;
    const bool final_feasible = eval.violation <= kAdmissibleSlack;
    const Frames& chosen = best ? *best : frames;
    std::optional<IsotopyPath> path = to_path(chosen, times);
    if (!path) {
        // Final iterate is not embedded and nothing admissible was seen.
        result.admissible = false;
        result.constraint_violation_max = kInf;
        result.converged = false;
        result.upper_bound = kInf;
        return result;
    }
    result.path = *path;
    const AdmissibilityReport report =
        check_admissible(result.path, cfg.lambda, std::max(cfg.time_samples, times.size()));
    double violation = 0.0;
    for (const SliceReport& s : report.per_slice) {
        violation = std::max({violation, 1.0 - s.thickness, s.length - cfg.lambda});
    }
    result.constraint_violation_max = std::max(0.0, violation);
    result.admissible = report.admissible;
    result.upper_bound = swept_area(result.path).total;
    result.converged = (inner_converged || !has_interior) && final_feasible && best.has_value();
    return result;
}

OptimizeResult loop_cost(const PolygonalKnot& base, const IsotopyPath& seed_loop, const OptimizeConfig& cfg)
{
    if (!(seed_loop.front() == base) || !(seed_loop.back() == base)) {
        throw ValidationError("loop_cost: seed loop must start and end at the base knot");
    }
    return minimize_sweep(base, base, cfg, &seed_loop);
}

MergeCostResult merge_cost(std::span<const PolygonalKnot> set0, std::span<const PolygonalKnot> set1,
                           const OptimizeConfig& cfg, const MergeCostResult* warm)
{
    if (set0.empty() || set1.empty()) {
        throw ValidationError("merge_cost: representative sets must be non-empty");
    }
    MergeCostResult out;
    out.bound.kind = BoundKind::UpperBound;
    out.bound.value = kInf;
    std::ostringstream diagnostics;
    for (std::size_t i = 0; i < set0.size(); ++i) {
        for (std::size_t j = 0; j < set1.size(); ++j) {
            const IsotopyPath* start = nullptr;
            if (warm != nullptr && warm->best && warm->index0 == i && warm->index1 == j) {
                start = &warm->best->path;
            }
            try {
                OptimizeResult r = minimize_sweep(set0[i], set1[j], cfg, start);
                if (r.admissible && r.upper_bound < out.bound.value) {
                    out.bound.value = r.upper_bound;
                    out.index0 = i;
                    out.index1 = j;
                    out.best = std::move(r);
                } else if (!r.admissible) {
                    diagnostics << " pair (" << i << "," << j << "): no admissible path;";
                }
            } catch (const ValidationError& e) {
                diagnostics << " pair (" << i << "," << j << "): " << e.what() << ";";
            }
        }
    }
    if (!out.best) {
        throw NumericError("merge_cost: no admissible pairing found." + diagnostics.str());
    }
    std::ostringstream w;
    w << "optimized path between representatives " << out.index0 << " and " << out.index1;
    out.bound.witness = w.str();
    return out;
}

double merge_scale_upper(const PolygonalKnot& g0, const PolygonalKnot& g1, double lambda_lo, double lambda_hi,
                         const OptimizeConfig& cfg)
{
    if (!(lambda_lo < lambda_hi) || !(lambda_lo > 0.0)) {
        throw ValidationError("merge_scale_upper needs 0 < lambda_lo < lambda_hi");
    }
    auto feasible = [&](double lambda) {
        OptimizeConfig c = cfg;
        c.lambda = lambda;
        try {
            return minimize_sweep(g0, g1, c).admissible;
        } catch (const ValidationError&) {
            return false;
        }
    };
    if (!feasible(lambda_hi)) {
        throw ValidationError("merge_scale_upper: no admissible path found at lambda_hi");
    }
    if (feasible(lambda_lo)) {
        return lambda_lo;
    }
    double lo = lambda_lo;
    double hi = lambda_hi;
    while ((hi - lo) > 1e-3 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

std::vector<LambdaSweepPoint> lambda_sweep(const PolygonalKnot& g0, const PolygonalKnot& g1,
                                           std::span<const double> levels, const OptimizeConfig& cfg)
{
    for (std::size_t k = 1; k < levels.size(); ++k) {
        if (levels[k] < levels[k - 1]) {
            throw ValidationError("lambda_sweep: levels must be nondecreasing");
        }
    }
    std::vector<LambdaSweepPoint> out;
    std::optional<IsotopyPath> carried;
    double reported = kInf;
    for (double level : levels) {
        if (!out.empty() && out.back().lambda == level) {
            out.push_back(out.back());
            continue;
        }
        OptimizeConfig c = cfg;
        c.lambda = level;
        LambdaSweepPoint point;
        point.lambda = level;
        try {
            // A path admissible at a lower level stays admissible here.
            OptimizeResult r = minimize_sweep(g0, g1, c, carried ? &*carried : nullptr);
            if (r.admissible && r.upper_bound <= reported) {
                reported = r.upper_bound;
                carried = r.path;
            }
        } catch (const ValidationError&) {
        }
        point.upper_bound = reported;
        point.admissible = std::isfinite(reported);
        out.push_back(point);
    }
    return out;
}

}  // namespace ropesweep
