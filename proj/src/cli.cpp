#include "ropesweep/cli.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <limits>
#include <ostream>

#include "ropesweep/corpus.hpp"
#include "ropesweep/errors.hpp"
#include "ropesweep/io.hpp"

namespace ropesweep {

namespace {

using io::json;

Vec3 to_vec(const std::vector<double>& v, const char* flag)
{
    if (v.size() != 3) {
        throw ValidationError(std::string(flag) + " needs three numbers");
    }
    return {v[0], v[1], v[2]};
}

PolygonalKnot load_knot(const std::string& path) { return io::knot_from_json(io::read_json_file(path)); }
IsotopyPath load_isotopy(const std::string& path) { return io::isotopy_from_json(io::read_json_file(path)); }

std::string csv_real(double x)
{
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

struct Options {
    std::vector<std::string> files;
    double lambda = 0.0;
    double lambda_lo = 0.0;
    double lambda_hi = 0.0;
    std::vector<double> levels;
    std::size_t keyframes = 16;
    std::size_t time_samples = 33;
    std::size_t time_resolution = 64;
    std::uint64_t seed = 0;
    std::vector<double> u;
    std::vector<double> plane;
    bool csv = false;
    std::string family;
    std::vector<std::string> params;
    std::string graph_file;
    std::string code0;
    std::string code1;
};

OptimizeConfig config_from(const Options& o, double lambda)
{
    OptimizeConfig c;
    c.lambda = lambda;
    c.keyframe_count = o.keyframes;
    c.time_samples = o.time_samples;
    c.seed = o.seed;
    return c;
}

int dispatch(const std::string& cmd, const Options& o, std::ostream& out)
{
    if (cmd == "thickness") {
        const PolygonalKnot p = load_knot(o.files.at(0));
        json j = io::to_json(thickness(p));
        j["length"] = length(p);
        out << io::dump(j) << '\n';
    } else if (cmd == "rop") {
        const PolygonalKnot p = load_knot(o.files.at(0));
        const double thi = thickness(p).thickness;
        out << io::dump(json{{"length", length(p)}, {"thickness", thi}, {"ropelength", ropelength(p)}}) << '\n';
    } else if (cmd == "sweep") {
        const SweptAreaResult s = swept_area(load_isotopy(o.files.at(0)));
        if (o.csv) {
            out << "interval,area\n";
            for (std::size_t k = 0; k < s.per_interval.size(); ++k) {
                out << k << ',' << csv_real(s.per_interval[k]) << '\n';
            }
        } else {
            out << io::dump(io::to_json(s)) << '\n';
        }
    } else if (cmd == "bound") {
        const PolygonalKnot g0 = load_knot(o.files.at(0));
        const PolygonalKnot g1 = load_knot(o.files.at(1));
        const Vec3 normal = o.plane.empty() ? Vec3{0, 0, 1} : to_vec(o.plane, "--plane");
        json j{{"sup_plane", io::to_json(sup_plane_bound(g0, g1))},
               {"projected", io::to_json(projected_area_bound(g0, g1, OrientedPlane::from_normal(normal)))}};
        out << io::dump(j) << '\n';
    } else if (cmd == "optimize") {
        const OptimizeResult r =
            minimize_sweep(load_knot(o.files.at(0)), load_knot(o.files.at(1)), config_from(o, o.lambda));
        out << io::dump(io::to_json(r)) << '\n';
    } else if (cmd == "merge-scale") {
        const double m = merge_scale_upper(load_knot(o.files.at(0)), load_knot(o.files.at(1)), o.lambda_lo,
                                           o.lambda_hi, config_from(o, o.lambda_hi));
        out << io::dump(json{{"merge_scale_upper", m}, {"kind", "UpperBound"}}) << '\n';
    } else if (cmd == "lambda-sweep") {
        const auto pts = lambda_sweep(load_knot(o.files.at(0)), load_knot(o.files.at(1)), o.levels,
                                      config_from(o, o.levels.empty() ? 1.0 : o.levels.front()));
        if (o.csv) {
            out << "lambda,upper_bound,admissible\n";
            for (const auto& p : pts) {
                out << csv_real(p.lambda) << ',' << csv_real(p.upper_bound) << ',' << (p.admissible ? 1 : 0) << '\n';
            }
        } else {
            json arr = json::array();
            for (const auto& p : pts) {
                arr.push_back(json{{"lambda", p.lambda},
                                   {"upper_bound", std::isfinite(p.upper_bound) ? json(p.upper_bound) : json(nullptr)},
                                   {"admissible", p.admissible}});
            }
            out << io::dump(arr) << '\n';
        }
    } else if (cmd == "diagram") {
        out << io::dump(io::to_json(project(load_knot(o.files.at(0)), to_vec(o.u, "--u")))) << '\n';
    } else if (cmd == "graph") {
        std::vector<IsotopyPath> paths;
        for (const std::string& f : o.files) {
            paths.push_back(load_isotopy(f));
        }
        std::optional<double> lambda;
        if (o.lambda > 0.0) {
            lambda = o.lambda;
        }
        out << io::dump(io::to_json(build_graph(paths, to_vec(o.u, "--u"), o.time_resolution, lambda))) << '\n';
    } else if (cmd == "ddist") {
        const DiagramGraph g = io::graph_from_json(io::read_json_file(o.graph_file));
        const double d = diagram_distance(g, o.code0, o.code1);
        out << io::dump(json{{"distance", std::isfinite(d) ? json(d) : json(nullptr)}, {"connected", std::isfinite(d)}})
            << '\n';
    } else if (cmd == "generate") {
        const auto family = parse_family(o.family);
        if (!family) {
            throw ValidationError("generate: unknown family '" + o.family + "'");
        }
        CorpusSpec spec;
        spec.family = *family;
        spec.seed = o.seed;
        for (const std::string& kv : o.params) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) {
                throw ValidationError("--param expects name=value, got '" + kv + "'");
            }
            std::size_t used = 0;
            double value = 0.0;
            try {
                value = std::stod(kv.substr(eq + 1), &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != kv.size() - eq - 1) {
                throw ValidationError("--param value is not a number: '" + kv + "'");
            }
            spec.parameters[kv.substr(0, eq)] = value;
        }
        out << io::dump(io::to_json(generate(spec))) << '\n';
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Thickness, swept area and Reidemeister-graph tools for polygonal knots", "ropesweep"};
    app.require_subcommand(1);
    Options o;

    auto knot1 = [&](const char* name, const char* desc) {
        CLI::App* s = app.add_subcommand(name, desc);
        s->add_option("knot", o.files, "knot JSON")->required()->expected(1);
        return s;
    };
    auto knot2 = [&](const char* name, const char* desc) {
        CLI::App* s = app.add_subcommand(name, desc);
        s->add_option("knots", o.files, "start and end knot JSON")->required()->expected(2);
        return s;
    };
    auto opt_flags = [&](CLI::App* s) {
        s->add_option("--keyframes", o.keyframes, "keyframe count")->check(CLI::Range(2, 100000));
        s->add_option("--time-samples", o.time_samples, "admissibility samples")->check(CLI::PositiveNumber);
        s->add_option("--seed", o.seed, "perturbation seed");
    };

    knot1("thickness", "thickness breakdown of a knot");
    knot1("rop", "length, thickness and ropelength");
    app.add_subcommand("sweep", "swept area of an isotopy")
        ->add_option("isotopy", o.files, "isotopy JSON")
        ->required()
        ->expected(1);
    app.get_subcommand("sweep")->add_flag("--csv", o.csv, "per-interval CSV");
    knot2("bound", "calibration lower bounds")->add_option("--plane", o.plane, "plane normal (default 0 0 1)")->expected(3);
    auto* optimize = knot2("optimize", "optimized swept-area upper bound");
    optimize->add_option("--lambda", o.lambda, "ropelength level")->required();
    opt_flags(optimize);
    auto* merge = knot2("merge-scale", "bisection for the merge scale");
    merge->add_option("--lambda-lo", o.lambda_lo, "lower level")->required();
    merge->add_option("--lambda-hi", o.lambda_hi, "upper level")->required();
    opt_flags(merge);
    auto* sweep = knot2("lambda-sweep", "upper bounds over increasing levels");
    sweep->add_option("--levels", o.levels, "ropelength levels")->required();
    sweep->add_flag("--csv", o.csv, "CSV output");
    opt_flags(sweep);
    knot1("diagram", "Gauss code of a projection")->add_option("--u", o.u, "projection direction")->required()->expected(3);
    auto* graph = app.add_subcommand("graph", "swept-area weighted Reidemeister graph");
    graph->add_option("isotopies", o.files, "isotopy JSON files")->required();
    graph->add_option("--u", o.u, "projection direction")->required()->expected(3);
    graph->add_option("--lambda", o.lambda, "check admissibility at this level");
    graph->add_option("--time-resolution", o.time_resolution, "scan cells")->check(CLI::PositiveNumber);
    auto* ddist = app.add_subcommand("ddist", "diagrammatic distance in a graph");
    ddist->add_option("graph", o.graph_file, "graph JSON")->required();
    ddist->add_option("code0", o.code0, "start Gauss code")->required();
    ddist->add_option("code1", o.code1, "end Gauss code")->required();
    auto* gen = app.add_subcommand("generate", "corpus knot");
    gen->add_option("family", o.family, "RegularNGon | EllipseNGon | SquareFamily | TrefoilPolygon | RandomPerturbed")
        ->required();
    gen->add_option("--param", o.params, "name=value");
    gen->add_option("--seed", o.seed, "seed for RandomPerturbed");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "ropesweep: " << e.what() << '\n';
        return 2;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return dispatch(cmd, o, out);
    } catch (const ValidationError& e) {
        err << "ropesweep " << cmd << ": " << e.what() << '\n';
        return 2;
    } catch (const io::json::exception& e) {
        err << "ropesweep " << cmd << ": malformed input: " << e.what() << '\n';
        return 2;
    } catch (const NumericError& e) {
        err << "ropesweep " << cmd << ": " << e.what() << '\n';
        return 3;
    }
}

}  // namespace ropesweep
