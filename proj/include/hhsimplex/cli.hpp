#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hhsimplex/convexfns.hpp"
#include "hhsimplex/geometry.hpp"
#include "hhsimplex/report.hpp"
#include "hhsimplex/subdivision.hpp"
#include "hhsimplex/verify.hpp"

namespace hhsimplex::cli {

enum ExitCode : int { kSuccess = 0, kVerdictFailure = 1, kInvalidConfig = 2, kGeometryFailure = 3 };

/// Largest dimension for the exhaustive family and subset-pair enumerations.
inline constexpr int kMaxExhaustiveDimension = 6;

/// Bad command-line input; maps to exit code 2.
class ConfigError : public Error {
public:
    using Error::Error;
};

struct RunConfig {
    std::string command;
    int dimension = 2;
    bool dimension_given = false;
    std::string simplex_source = "standard";
    std::string functions = "all";
    std::string method = "auto";
    std::size_t mc_samples = 100'000;
    double z = 3.0;
    int p_max = 4;
    std::string out_path;
    std::string format;
    bool include_nonconvex = false;
    unsigned workers = 1;
    bool verbose = false;
    std::uint64_t seed = 0;

    QuadratureConfig quadrature() const
    {
        QuadratureConfig q;
        q.method = method == "exact" ? MethodChoice::exact
                   : method == "mc"  ? MethodChoice::monte_carlo
                                     : MethodChoice::automatic;
        q.mc_samples = mc_samples;
        q.z = z;
        q.seed = seed;
        q.workers = workers;
        return q;
    }

    /// Embedded in every report. The output path is left out so that reports
    /// written to different files can be compared byte for byte.
    report::Json to_json() const
    {
        return report::Json{{"command", command},
                            {"dim", dimension},
                            {"simplex", simplex_source},
                            {"func", functions},
                            {"method", method},
                            {"samples", mc_samples},
                            {"z", z},
                            {"pmax", p_max},
                            {"format", format},
                            {"include_nonconvex", include_nonconvex},
                            {"workers", workers},
                            {"seed", seed}};
    }
};

inline std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

/// Simplex file: a JSON array of vertex coordinate arrays.
inline Simplex read_simplex_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open simplex file '" + path + "'");
    report::Json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw ConfigError("simplex file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_array() || doc.empty()) throw ConfigError("simplex file must hold a non-empty array of vertices");
    std::vector<Vector> vertices;
    for (const auto& row : doc) {
        if (!row.is_array() || row.empty()) throw ConfigError("each vertex must be a non-empty array of numbers");
        Vector v(static_cast<Eigen::Index>(row.size()));
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (!row[i].is_number()) throw ConfigError("vertex coordinates must be numbers");
            v[static_cast<Eigen::Index>(i)] = row[i].get<double>();
        }
        vertices.push_back(std::move(v));
    }
    try {
        return Simplex(std::move(vertices));
    } catch (const Error& e) {
        throw ConfigError(std::string("simplex file: ") + e.what());
    }
}

/// Full-dimensional base simplex selected by the configuration.
inline Simplex resolve_simplex(RunConfig& cfg)
{
    const auto& src = cfg.simplex_source;
    if (src == "standard") return standard_simplex(cfg.dimension);
    if (src == "random") {
        Rng rng(derive_seed(cfg.seed, 0x51u));
        return random_simplex(cfg.dimension, rng);
    }
    if (src.rfind("file:", 0) == 0) {
        Simplex s = read_simplex_file(src.substr(5));
        if (s.dimension() != s.ambient_dimension())
            throw ConfigError("simplex file must hold n+1 vertices in R^n");
        if (cfg.dimension_given && s.dimension() != cfg.dimension)
            throw ConfigError("--dim " + std::to_string(cfg.dimension) + " does not match the simplex file dimension " +
                              std::to_string(s.dimension()));
        cfg.dimension = s.dimension();
        return s;
    }
    throw ConfigError("unknown simplex source '" + src + "' (expected standard, random or file:PATH)");
}

inline std::vector<TestFunction> resolve_functions(const RunConfig& cfg)
{
    const auto all = catalog(cfg.dimension, cfg.seed);
    std::vector<TestFunction> out;
    if (cfg.functions == "all") {
        for (const auto& f : all)
            if (f.is_convex) out.push_back(f);
    } else {
        for (const auto& name : split_list(cfg.functions)) {
            auto it = std::find_if(all.begin(), all.end(), [&](const auto& f) { return f.id == name; });
            if (it == all.end()) throw ConfigError("unknown function '" + name + "'");
            if (std::none_of(out.begin(), out.end(), [&](const auto& f) { return f.id == name; })) out.push_back(*it);
        }
    }
    if (cfg.include_nonconvex && std::none_of(out.begin(), out.end(), [](const auto& f) { return !f.is_convex; }))
        for (const auto& f : all)
            if (!f.is_convex) out.push_back(f);
    if (out.empty()) throw ConfigError("no functions selected");
    if (cfg.method == "exact")
        for (const auto& f : out)
            if (!f.is_polynomial()) throw ConfigError("--method exact needs polynomial functions; '" + f.id + "' is not");
    return out;
}

inline void write_output(const RunConfig& cfg, const std::string& text)
{
    std::ofstream out(cfg.out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write output file '" + cfg.out_path + "'");
    out << text;
    if (!out) throw ConfigError("failed writing output file '" + cfg.out_path + "'");
}

inline std::string dump(const report::Json& j) { return j.dump(2) + "\n"; }

inline int cmd_family(RunConfig& cfg, std::ostream& progress)
{
    if (cfg.dimension > kMaxExhaustiveDimension)
        throw ConfigError("family enumeration supports n <= " + std::to_string(kMaxExhaustiveDimension));
    const Simplex base = resolve_simplex(cfg);
    require_nondegenerate(base);
    const Vector b = barycenter(base);
    const double scale = base.max_edge_length();

    report::Json results = report::Json::array();
    std::string csv = report::csv_row({"K", "dimension", "volume", "barycenter", "vertices"});
    double max_dev = 0.0;
    for (const auto& k_set : proper_subsets(base.dimension())) {
        const Simplex member = build_delta_k(base, k_set);
        const Vector mb = barycenter(member);
        const double dev = (mb - b).cwiseAbs().maxCoeff();
        max_dev = std::max(max_dev, dev);
        const double vol = volume(member);
        results.push_back(report::Json{{"K", report::to_json(k_set)},
                                       {"dimension", member.dimension()},
                                       {"vertices", report::to_json(member)},
                                       {"volume", vol},
                                       {"barycenter", report::to_json(mb)}});
        auto join = [](const Vector& v) {
            std::string s;
            for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? " " : "") + report::format_double(v[i]);
            return s;
        };
        std::string verts;
        for (std::size_t i = 0; i < member.vertex_count(); ++i) verts += (i ? ";" : "") + join(member.vertex(i));
        csv += report::csv_row({k_set.to_string(), std::to_string(member.dimension()), report::format_double(vol),
                                join(mb), verts});
        if (cfg.verbose) progress << "K=" << k_set.to_string() << " volume=" << vol << "\n";
    }
    if (cfg.format == "csv") {
        write_output(cfg, csv);
    } else {
        report::Json doc{{"config", cfg.to_json()},
                         {"simplex", {{"digest", simplex_digest(base)}, {"vertices", report::to_json(base)}}},
                         {"results", results},
                         {"summary",
                          {{"entries", results.size()},
                           {"max_barycenter_deviation", max_dev},
                           {"relative_barycenter_deviation", scale > 0 ? max_dev / scale : 0.0}}}};
        write_output(cfg, dump(doc));
    }
    return kSuccess;
}

inline int cmd_verify(RunConfig& cfg, std::ostream& progress, std::ostream& err)
{
    if (cfg.dimension > kMaxExhaustiveDimension)
        throw ConfigError("verify enumerates all subset pairs and supports n <= " +
                          std::to_string(kMaxExhaustiveDimension));
    const Simplex base = resolve_simplex(cfg);
    require_nondegenerate(base);
    const auto functions = resolve_functions(cfg);
    const auto qcfg = cfg.quadrature();

    report::Json results = report::Json::array();
    std::string csv = report::csv_row({"function", "check", "left", "right", "slack", "tolerance", "pass"});
    std::size_t passed = 0, failed = 0;
    double max_violation = 0.0;
    std::vector<std::string> failures;
    for (const auto& f : functions) {
        if (cfg.verbose) progress << "verifying " << f.id << "\n";
        const FunctionReport r = verify_function(f, base, qcfg);
        for (const auto& v : r.verdicts()) {
            (v.pass ? passed : failed) += 1;
            max_violation = std::max(max_violation, v.violation());
        }
        for (auto& name : r.failures()) failures.push_back(std::move(name));
        results.push_back(report::to_json(r));

        auto row = [&](const std::string& check, const Verdict& v) {
            csv += report::csv_row({f.id, check, report::format_double(v.left), report::format_double(v.right),
                                    report::format_double(v.slack), report::format_double(v.tolerance),
                                    v.pass ? "pass" : "fail"});
        };
        row("hh_left", r.hh.left_verdict);
        row("hh_right", r.hh.right_verdict);
        for (const auto& t : r.theorem) row("theorem L=" + t.l_set.to_string() + " K=" + t.k_set.to_string(), t.verdict);
        for (const auto& c : r.chain.comparisons)
            row("chain " + r.chain.entries[c.left].k_set.to_string() + "<=" + r.chain.entries[c.right].k_set.to_string(),
                c.verdict);
        for (const auto& a : r.avg_k) row("avg_k k=" + std::to_string(a.lower.k), a.verdict);
        for (const auto& a : r.avg_monotone)
            row("avg_monotone k=" + std::to_string(a.upper.k) + " l=" + std::to_string(a.lower.k), a.verdict);
    }

    if (cfg.format == "csv") {
        write_output(cfg, csv);
    } else {
        report::Json doc{{"config", cfg.to_json()},
                         {"simplex", {{"digest", simplex_digest(base)}, {"vertices", report::to_json(base)}}},
                         {"results", results},
                         {"summary", {{"pass", passed}, {"fail", failed}, {"max_violation", max_violation}}}};
        write_output(cfg, dump(doc));
    }
    if (failed > 0) {
        err << failed << " comparison(s) failed:\n";
        for (const auto& name : failures) err << "  " << name << "\n";
        return kVerdictFailure;
    }
    return kSuccess;
}

inline int cmd_subdivide(RunConfig& cfg, std::ostream& progress, std::ostream& err)
{
    const Simplex root = resolve_simplex(cfg);
    require_nondegenerate(root);
    check_level_cap(root, cfg.p_max);
    const auto functions = resolve_functions(cfg);
    const auto qcfg = cfg.quadrature();

    std::vector<ConvergenceSeries> series;
    for (const auto& f : functions) {
        if (cfg.verbose) progress << "subdividing for " << f.id << "\n";
        series.push_back(dr_convergence_report(f, root, cfg.p_max, qcfg));
    }

    std::size_t failed = 0;
    for (std::size_t i = 0; i < series.size(); ++i)
        if (!series[i].pass()) {
            ++failed;
            err << "series for '" << functions[i].id << "' is not monotone below its mean\n";
        }

    if (cfg.format == "json") {
        report::Json results = report::Json::array();
        for (std::size_t i = 0; i < series.size(); ++i) {
            auto j = report::to_json(series[i]);
            j["function"] = functions[i].id;
            results.push_back(std::move(j));
        }
        report::Json doc{{"config", cfg.to_json()},
                         {"simplex", {{"digest", simplex_digest(root)}, {"vertices", report::to_json(root)}}},
                         {"results", results},
                         {"summary", {{"pass", series.size() - failed}, {"fail", failed}}}};
        write_output(cfg, dump(doc));
    } else {
        std::vector<std::string> header{"p", "count"};
        for (const auto& f : functions) header.push_back(f.id);
        for (const auto& f : functions) header.push_back(f.id + "_reference");
        std::string csv = report::csv_row(header);
        for (int p = 0; p <= cfg.p_max; ++p) {
            const auto& first = series.front().points[static_cast<std::size_t>(p)];
            std::vector<std::string> row{std::to_string(first.p), std::to_string(first.count)};
            for (const auto& s : series) row.push_back(report::format_double(s.points[static_cast<std::size_t>(p)].average));
            for (const auto& s : series) row.push_back(report::format_double(s.reference.value));
            csv += report::csv_row(row);
        }
        write_output(cfg, csv);
    }
    return failed > 0 ? kVerdictFailure : kSuccess;
}

inline void add_common_options(CLI::App& sub, RunConfig& cfg, std::optional<std::uint64_t>& seed)
{
    sub.add_option("--dim", cfg.dimension, "ambient dimension n")->check(CLI::Range(1, 62));
    sub.add_option("--simplex", cfg.simplex_source, "standard | random | file:PATH");
    sub.add_option("--seed", seed, "master seed (overrides HH_SEED)");
    sub.add_option("--func", cfg.functions, "catalog names, comma separated, or 'all'");
    sub.add_option("--method", cfg.method, "auto | exact | mc")->check(CLI::IsMember({"auto", "exact", "mc"}));
    sub.add_option("--samples", cfg.mc_samples, "Monte Carlo sample count")->check(CLI::Range(std::size_t{2}, std::size_t{1'000'000'000}));
    sub.add_option("--z", cfg.z, "confidence multiplier for Monte Carlo bounds")->check(CLI::NonNegativeNumber);
    sub.add_option("--pmax", cfg.p_max, "deepest subdivision level")->check(CLI::Range(0, 64));
    sub.add_option("--out", cfg.out_path, "output file");
    sub.add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    sub.add_flag("--include-nonconvex", cfg.include_nonconvex, "add the non-convex control function");
    sub.add_option("--workers", cfg.workers, "Monte Carlo worker threads")->check(CLI::Range(1u, 256u));
    sub.add_flag("--verbose", cfg.verbose, "progress on stdout");
}

/// Parses arguments and runs one subcommand. argv[0] is the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"Nested subsimplex families and Hermite-Hadamard refinement checks", "hhsimplex"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::optional<std::uint64_t> seed;
    auto* family = app.add_subcommand("family", "enumerate Delta^[K] for all proper K");
    auto* verify = app.add_subcommand("verify", "check the refinement chain for catalog functions");
    auto* subdivide = app.add_subcommand("subdivide", "barycentric subdivision averages by level");
    for (auto* sub : {family, verify, subdivide}) add_common_options(*sub, cfg, seed);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInvalidConfig;
    }

    try {
        cfg.command = app.get_subcommands().front()->get_name();
        cfg.dimension_given = app.get_subcommands().front()->count("--dim") > 0;
        if (seed) {
            cfg.seed = *seed;
        } else if (const char* env = std::getenv("HH_SEED"); env != nullptr && *env != '\0') {
            try {
                std::size_t used = 0;
                cfg.seed = std::stoull(env, &used);
                if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
            } catch (const std::exception&) {
                throw ConfigError(std::string("HH_SEED is not an unsigned integer: '") + env + "'");
            }
        }
        if (cfg.format.empty()) cfg.format = cfg.command == "subdivide" ? "csv" : "json";
        if (cfg.out_path.empty()) cfg.out_path = cfg.command + "." + cfg.format;

        if (cfg.command == "family") return cmd_family(cfg, out);
        if (cfg.command == "verify") return cmd_verify(cfg, out, err);
        return cmd_subdivide(cfg, out, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidConfig;
    } catch (const DegenerateSimplexError& e) {
        err << "error: " << e.what() << "\n";
        return kGeometryFailure;
    } catch (const ResourceLimitError& e) {
        err << "error: " << e.what() << "\n";
        return kGeometryFailure;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidConfig;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidConfig;
    }
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    return run(std::vector<std::string>(argv, argv + argc), out, err);
}

} // namespace hhsimplex::cli
