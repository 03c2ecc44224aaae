#pragma once

// Command-line front end. Every command reads a DIMACS graph (path or "-"
// for stdin), prints JSON or CSV, and follows one exit-code contract:
// 0 success, 1 a verification check failed, 2 usage, input or I/O error
// (with a JSON error object on stderr). Vertex ids and step positions are
// 1-based in all input and output.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tfcolor/dimacs.hpp"
#include "tfcolor/estimator.hpp"
#include "tfcolor/exact.hpp"
#include "tfcolor/frac_chrom.hpp"
#include "tfcolor/generators.hpp"
#include "tfcolor/graph.hpp"
#include "tfcolor/process.hpp"
#include "tfcolor/rng.hpp"
#include "tfcolor/theorems.hpp"

namespace tfcolor::cli {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;
inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_usage = 2;

/// Error reported as {"error": {"kind": ..., "message": ...}} with exit code 2.
class UsageError : public std::runtime_error {
public:
    UsageError(std::string kind, const std::string& message) : std::runtime_error(message), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// Shortest text with 17 significant digits, independent of locale.
inline std::string format_real(double x)
{
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    if (std::isnan(x)) {
        return "nan";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline double parse_real(const std::string& text, const std::string& what)
{
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw UsageError("usage", what + ": not a number: '" + text + "'");
    }
    return value;
}

inline std::uint64_t parse_count(const std::string& text, const std::string& what)
{
    std::uint64_t value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw UsageError("usage", what + ": not a non-negative integer: '" + text + "'");
    }
    return value;
}

inline Json weight_json(const Weight& w)
{
    const double v = w.value();
    return std::isfinite(v) ? Json(v) : Json("inf");
}

namespace detail {

struct Context {
    std::vector<std::string> argv;
    std::ostream& out;
    std::ostream& err;
    std::istream& in;
    std::optional<std::uint64_t> seed;
};

inline Json invocation(const Context& ctx)
{
    Json inv;
    inv["argv"] = ctx.argv;
    inv["seed"] = ctx.seed ? Json(*ctx.seed) : Json(nullptr);
    return inv;
}

inline Json envelope(const Context& ctx, const std::string& command)
{
    Json j;
    j["schemaVersion"] = schema_version;
    j["command"] = command;
    j["invocation"] = invocation(ctx);
    return j;
}

inline void write_text(Context& ctx, const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        ctx.out << text;
        ctx.out.flush();
        return;
    }
    std::ofstream file(path);
    if (!file) {
        throw UsageError("io", "cannot open '" + path + "' for writing");
    }
    file << text;
    if (!file) {
        throw UsageError("io", "write to '" + path + "' failed");
    }
}

inline void emit(Context& ctx, const std::string& path, const Json& j) { write_text(ctx, path, j.dump(2) + "\n"); }

inline Graph load_graph(Context& ctx, const std::string& path)
{
    if (path.empty() || path == "-") {
        return read_dimacs(ctx.in);
    }
    std::ifstream file(path);
    if (!file) {
        throw UsageError("io", "cannot open '" + path + "'");
    }
    return read_dimacs(file);
}

inline OrderedGraph make_order(const Graph& g, const std::string& mode)
{
    if (mode == "degeneracy") {
        return degeneracy_order(g).ordered;
    }
    if (mode == "natural") {
        return natural_order(g);
    }
    if (mode == "degree") {
        return order_by_decreasing_degree(g);
    }
    throw UsageError("usage", "unknown order '" + mode + "' (expected degeneracy, natural or degree)");
}

inline Json order_json(const OrderedGraph& og)
{
    Json ids = Json::array();
    for (Vertex v : og.order()) {
        ids.push_back(v + 1);
    }
    return ids;
}

/// Per-vertex values from "vertex value" lines; '#' and 'c' lines are comments.
inline std::vector<double> read_vertex_values(const std::string& path, std::size_t n, const std::string& what)
{
    std::ifstream file(path);
    if (!file) {
        throw UsageError("io", "cannot open " + what + " file '" + path + "'");
    }
    std::vector<double> values(n, std::numeric_limits<double>::quiet_NaN());
    std::vector<char> seen(n, 0);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string id_text;
        std::string value_text;
        if (!(fields >> id_text) || id_text[0] == '#' || id_text == "c") {
            continue;
        }
        std::string extra;
        if (!(fields >> value_text) || (fields >> extra)) {
            throw UsageError("format", path + ":" + std::to_string(line_no) + ": expected 'vertex value'");
        }
        const std::uint64_t id = parse_count(id_text, path + ":" + std::to_string(line_no));
        if (id < 1 || id > n) {
            throw UsageError("format", path + ":" + std::to_string(line_no) + ": vertex " + id_text +
                                           " outside 1.." + std::to_string(n));
        }
        if (seen[id - 1] != 0) {
            throw UsageError("format", path + ":" + std::to_string(line_no) + ": vertex " + id_text + " listed twice");
        }
        seen[id - 1] = 1;
        values[id - 1] = parse_real(value_text, path + ":" + std::to_string(line_no));
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (seen[v] == 0) {
            throw UsageError("format", what + " file '" + path + "' has no entry for vertex " + std::to_string(v + 1));
        }
    }
    return values;
}

struct WeightSpec {
    std::vector<double> w0;  ///< by vertex id
    std::string mode;        ///< constant, file, auto or random
};

/// --w0: a constant, @file, "auto" (degenerate start weight) or "random"
/// (uniform on (0, 0.7], drawn from the seed) when `allow_random`.
inline WeightSpec parse_w0(const std::string& spec, const Graph& g, std::uint64_t seed, bool allow_random)
{
    const std::size_t n = g.vertex_count();
    WeightSpec out;
    if (spec == "auto") {
        const std::size_t d = degeneracy_order(g).degeneracy;
        if (d < 3) {
            throw UsageError("usage", "--w0 auto needs degeneracy >= 3, graph has " + std::to_string(d));
        }
        out.w0.assign(n, degenerate_start_weight(d));
        out.mode = "auto";
    } else if (spec == "random" && allow_random) {
        auto u = uniform_stream(seed);
        out.w0.resize(n);
        for (double& x : out.w0) {
            x = 0.7 * (1.0 - u());
        }
        out.mode = "random";
    } else if (!spec.empty() && spec[0] == '@') {
        out.w0 = read_vertex_values(spec.substr(1), n, "weight");
        out.mode = "file";
    } else {
        out.w0.assign(n, parse_real(spec, "--w0"));
        out.mode = "constant";
    }
    validate_initial_weights(g, out.w0);
    return out;
}

inline Json w0_json(const WeightSpec& spec)
{
    if (spec.mode == "auto" || spec.mode == "constant") {
        return spec.w0.empty() ? Json(nullptr) : Json(spec.w0.front());
    }
    return Json(spec.w0);
}

inline std::size_t parse_target(std::uint64_t target, const OrderedGraph& og)
{
    if (target < 1 || target > og.size()) {
        throw UsageError("usage", "--target " + std::to_string(target) + " outside 1.." + std::to_string(og.size()));
    }
    return static_cast<std::size_t>(target - 1);
}

inline std::vector<std::size_t> parse_list(const std::string& text)
{
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(static_cast<std::size_t>(parse_count(item, "--d")));
    }
    if (out.empty()) {
        throw UsageError("usage", "--d needs at least one value");
    }
    return out;
}

/// Monte Carlo comparison of per-vertex estimates against per-vertex bounds:
/// passes iff estimate + sigmas * SE >= bound at every vertex.
inline Json empirical_check(const OrderedGraph& og, std::span<const double> w0, std::span<const double> bound,
                            std::uint64_t samples, std::uint64_t seed, unsigned jobs, double sigmas, bool& pass)
{
    const auto report = estimate_inclusion(og, w0, samples, seed, jobs);
    const auto lowest = empirical_min_inclusion(report);
    Vertex worst = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    for (Vertex v = 0; v < report.per_vertex.size(); ++v) {
        const double p = report.per_vertex[v].estimate;
        const double margin = p + sigmas * standard_error(p, samples) - bound[v];
        if (margin < worst_margin) {
            worst_margin = margin;
            worst = v;
        }
    }
    pass = worst_margin >= 0.0;
    const double se_min = standard_error(lowest.estimate, samples);
    Json j;
    j["samples"] = samples;
    j["seed"] = seed;
    j["sigmas"] = sigmas;
    j["minVertex"] = lowest.vertex + 1;
    j["minEstimate"] = lowest.estimate;
    j["ciLow"] = lowest.ci_low;
    j["ciHigh"] = report.per_vertex[lowest.vertex].ci_high;
    j["standardError"] = se_min;
    j["minPlusSigmasSe"] = lowest.estimate + sigmas * se_min;
    j["worstVertex"] = worst + 1;
    j["worstMargin"] = worst_margin;
    j["wallTimeSeconds"] = report.wall_time.count();
    j["pass"] = pass;
    return j;
}

} // namespace detail

/// Runs one command; `args` excludes the program name.
inline int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in)
{
    using namespace detail;
    Context ctx{{}, out, err, in, std::nullopt};
    ctx.argv.push_back("tfcolor");
    ctx.argv.insert(ctx.argv.end(), args.begin(), args.end());

    CLI::App app{"Weight-process sampler, exact oracle and fractional colouring certificates"};
    app.name("tfcolor");
    app.require_subcommand(1);

    std::string file = "-";
    std::string output;
    std::string order = "degeneracy";
    std::string w0_spec;
    std::uint64_t seed = 1;
    std::uint64_t samples = 100000;
    unsigned jobs = 0;

    auto add_file = [&](CLI::App* sub) { sub->add_option("file", file, "DIMACS graph, '-' for stdin"); };
    auto add_output = [&](CLI::App* sub) { sub->add_option("-o,--output", output, "output path (default stdout)"); };
    auto add_order = [&](CLI::App* sub) {
        sub->add_option("--order", order, "vertex order: degeneracy, natural or degree")->capture_default_str();
    };
    auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", seed, "random seed")->capture_default_str(); };

    // gen
    std::string family;
    std::vector<std::string> params;
    auto* gen_cmd = app.add_subcommand("gen", "generate a graph in DIMACS format");
    gen_cmd->add_option("family", family,
                        "cycle N | path N | complete N | edgeless N | complete-bipartite A B | petersen | "
                        "grotzsch | mycielski K | random-bipartite A B P | random-triangle-free N M | "
                        "random-bipartite-degeneracy A B D")
        ->required();
    gen_cmd->add_option("params", params, "family parameters");
    add_seed(gen_cmd);
    add_output(gen_cmd);

    auto* info_cmd = app.add_subcommand("info", "graph statistics");
    add_file(info_cmd);
    add_order(info_cmd);
    add_output(info_cmd);

    auto* sample_cmd = app.add_subcommand("sample", "one run of the weight process");
    add_file(sample_cmd);
    sample_cmd->add_option("--w0", w0_spec, "initial weights: constant, @file or auto")->required();
    add_seed(sample_cmd);
    add_order(sample_cmd);
    add_output(sample_cmd);

    std::string format = "json";
    auto* estimate_cmd = app.add_subcommand("estimate", "Monte Carlo inclusion probabilities");
    add_file(estimate_cmd);
    estimate_cmd->add_option("--w0", w0_spec, "initial weights: constant, @file or auto")->required();
    estimate_cmd->add_option("--samples", samples, "number of runs")->capture_default_str();
    add_seed(estimate_cmd);
    estimate_cmd->add_option("--jobs", jobs, "worker threads (default TFCOLOR_JOBS or all cores)");
    estimate_cmd->add_option("--format", format, "json or csv")->capture_default_str();
    add_order(estimate_cmd);
    add_output(estimate_cmd);

    std::optional<std::uint64_t> target;
    std::size_t max_steps = EnumerationBudget{}.max_steps;
    auto* exact_cmd = app.add_subcommand("exact", "exact inclusion probabilities by enumeration");
    add_file(exact_cmd);
    exact_cmd->add_option("--w0", w0_spec, "initial weights: constant, @file or auto")->required();
    exact_cmd->add_option("--target", target, "enumerate steps 1..k only (1-based position)");
    exact_cmd->add_option("--max-steps", max_steps, "enumeration budget in steps")->capture_default_str();
    add_order(exact_cmd);
    add_output(exact_cmd);

    std::size_t cap = 1'000'000;
    auto* chif_cmd = app.add_subcommand("chif", "exact fractional chromatic number with certificate");
    add_file(chif_cmd);
    chif_cmd->add_option("--cap", cap, "maximal independent set limit")->capture_default_str();
    add_output(chif_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "check a guarantee and emit a certificate");
    verify_cmd->require_subcommand(1);

    double epsilon = 0.0;
    bool with_exact = false;
    double sigmas = 3.0;
    auto* v_mainproc = verify_cmd->add_subcommand("mainproc", "condition and bound at one target");
    add_file(v_mainproc);
    v_mainproc->add_option("--w0", w0_spec, "initial weights: constant, @file or auto")->required();
    v_mainproc->add_option("--target", target, "1-based position")->required();
    v_mainproc->add_option("--epsilon", epsilon, "epsilon in (0, 1]")->required();
    v_mainproc->add_flag("--exact", with_exact, "compare against the exact probability");
    v_mainproc->add_option("--samples", samples, "Monte Carlo runs (0 = none)");
    add_seed(v_mainproc);
    add_order(v_mainproc);
    add_output(v_mainproc);

    bool per_vertex = false;
    auto* v_main = verify_cmd->add_subcommand("main", "degenerate triangle-free bound");
    add_file(v_main);
    v_main->add_option("--w0", w0_spec, "initial weights: auto (default), constant or @file");
    v_main->add_option("--samples", samples, "Monte Carlo runs (0 = none)")->capture_default_str();
    v_main->add_option("--sigmas", sigmas, "standard errors of slack")->capture_default_str();
    v_main->add_option("--jobs", jobs, "worker threads");
    v_main->add_flag("--per-vertex", per_vertex, "list every vertex");
    add_seed(v_main);
    add_output(v_main);

    std::string p_spec;
    double shrink = 1.0;
    double shearer_c = 0.5;
    auto* v_maingen = verify_cmd->add_subcommand("maingen", "product-condition bound alpha * p(v)");
    add_file(v_maingen);
    v_maingen->add_option("--p", p_spec, "probabilities: constant, @file or shearer")->required();
    v_maingen->add_option("--c", shearer_c, "starting constant for --p shearer")->capture_default_str();
    v_maingen->add_option("--shrink", shrink, "scale p by this factor first")->capture_default_str();
    v_maingen->add_flag("--exact", with_exact, "compare against exact probabilities");
    v_maingen->add_option("--samples", samples, "Monte Carlo runs (0 = none)");
    v_maingen->add_option("--sigmas", sigmas, "standard errors of slack")->capture_default_str();
    v_maingen->add_option("--jobs", jobs, "worker threads");
    add_seed(v_maingen);
    add_order(v_maingen);
    add_output(v_maingen);

    double tolerance = 1e-10;
    auto* v_claims = verify_cmd->add_subcommand("claims", "exact identities of the coupled processes");
    add_file(v_claims);
    v_claims->add_option("--w0", w0_spec, "initial weights: random (default), constant, @file or auto");
    v_claims->add_option("--target", target, "single 1-based position (default all)");
    v_claims->add_option("--tolerance", tolerance, "maximum allowed deviation")->capture_default_str();
    v_claims->add_option("--max-steps", max_steps, "enumeration budget in steps")->capture_default_str();
    add_seed(v_claims);
    add_order(v_claims);
    add_output(v_claims);

    auto* sweep_cmd = app.add_subcommand("sweep", "bound versus estimate over a range of degeneracies");
    sweep_cmd->require_subcommand(1);
    std::string d_list = "8,16,32,64";
    std::string sweep_family = "random-bipartite";
    std::size_t side = 0;
    auto* sweep_main = sweep_cmd->add_subcommand("main", "degenerate triangle-free bound");
    sweep_main->add_option("--d", d_list, "comma-separated degeneracies")->capture_default_str();
    sweep_main->add_option("--family", sweep_family, "graph family (random-bipartite)")->capture_default_str();
    sweep_main->add_option("--side", side, "vertices per side (default max(64, 8d))");
    sweep_main->add_option("--samples", samples, "Monte Carlo runs per graph")->capture_default_str();
    sweep_main->add_option("--jobs", jobs, "worker threads");
    add_seed(sweep_main);
    add_output(sweep_main);

    auto fail = [&](const std::string& kind, const std::string& message, Json extra = Json::object()) {
        Json j;
        j["schemaVersion"] = schema_version;
        j["error"] = {{"kind", kind}, {"message", message}};
        for (auto& [k, v] : extra.items()) {
            j["error"][k] = v;
        }
        j["invocation"] = invocation(ctx);
        err << j.dump() << "\n";
        return exit_usage;
    };

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what());
    }

    try {
        // ---------------------------------------------------------------- gen
        if (gen_cmd->parsed()) {
            ctx.seed = seed;
            auto need = [&](std::size_t count) {
                if (params.size() != count) {
                    throw UsageError("usage", "family '" + family + "' takes " + std::to_string(count) +
                                                  " parameter(s), got " + std::to_string(params.size()));
                }
            };
            auto num = [&](std::size_t i) { return static_cast<std::size_t>(parse_count(params[i], family)); };
            Graph g;
            std::string note;
            if (family == "cycle") {
                need(1);
                g = gen::cycle(num(0));
            } else if (family == "path") {
                need(1);
                g = gen::path(num(0));
            } else if (family == "complete") {
                need(1);
                g = gen::complete(num(0));
            } else if (family == "edgeless") {
                need(1);
                g = gen::edgeless(num(0));
            } else if (family == "complete-bipartite") {
                need(2);
                g = gen::complete_bipartite(num(0), num(1));
            } else if (family == "petersen") {
                need(0);
                g = gen::petersen();
            } else if (family == "grotzsch") {
                need(0);
                g = gen::grotzsch();
            } else if (family == "mycielski") {
                need(1);
                const std::size_t k = num(0);
                if (k < 2) {
                    throw UsageError("usage", "mycielski K needs K >= 2");
                }
                g = gen::complete(2);
                for (std::size_t i = 2; i < k; ++i) {
                    g = gen::mycielski(g);
                }
            } else if (family == "random-bipartite") {
                need(3);
                g = gen::random_bipartite(num(0), num(1), parse_real(params[2], "edge probability"), seed);
            } else if (family == "random-triangle-free") {
                need(2);
                const auto r = gen::random_triangle_free(num(0), num(1), seed);
                g = r.graph;
                if (!r.reached_target()) {
                    note = " (target " + std::to_string(r.target_edges) + " edges not reached after " +
                           std::to_string(r.attempts) + " attempts)";
                }
            } else if (family == "random-bipartite-degeneracy") {
                need(3);
                const auto r = gen::random_bipartite_with_degeneracy(num(0), num(1), num(2), seed);
                g = r.graph;
                note = " degeneracy " + std::to_string(r.degeneracy) + " edge probability " + format_real(r.edge_prob);
            } else {
                throw UsageError("usage", "unknown family '" + family + "'");
            }
            std::string comment = "tfcolor gen " + family;
            for (const auto& p : params) {
                comment += " " + p;
            }
            comment += " seed " + std::to_string(seed) + note;
            std::ostringstream text;
            write_dimacs(text, g, comment);
            write_text(ctx, output, text.str());
            return exit_ok;
        }

        // --------------------------------------------------------------- info
        if (info_cmd->parsed()) {
            const Graph g = load_graph(ctx, file);
            const auto og = make_order(g, order);
            const auto tri = find_triangle(g);
            Json j = envelope(ctx, "info");
            j["n"] = g.vertex_count();
            j["m"] = g.edge_count();
            j["maxDegree"] = g.max_degree();
            j["degeneracy"] = degeneracy_order(g).degeneracy;
            j["triangleFree"] = !tri.has_value();
            j["triangle"] = tri ? Json::array({tri->a + 1, tri->b + 1, tri->c + 1}) : Json(nullptr);
            j["order"] = order;
            j["maxLeftDegree"] = og.max_left_degree();
            j["localTriangleBound"] = local_triangle_bound(og);
            emit(ctx, output, j);
            return exit_ok;
        }

        // ------------------------------------------------------------- sample
        if (sample_cmd->parsed()) {
            ctx.seed = seed;
            const Graph g = load_graph(ctx, file);
            const auto og = make_order(g, order);
            const auto spec = parse_w0(w0_spec, g, seed, false);
            // same stream as replica 0 of `estimate --seed S`
            UniformSource<SplitMix64> uniform(SplitMix64(replica_seed(seed, 0)));
            const auto outcome = run_process(og, spec.w0, uniform);
            Json j = envelope(ctx, "sample");
            j["n"] = g.vertex_count();
            j["order"] = order_json(og);
            j["w0"] = w0_json(spec);
            Json set = Json::array();
            for (Vertex v : outcome.independent_set) {
                set.push_back(v + 1);
            }
            j["independentSet"] = set;
            j["size"] = outcome.independent_set.size();
            Json choices = Json::array();
            for (Choice c : outcome.choices) {
                choices.push_back(c == Choice::include ? "include" : "boost");
            }
            j["choices"] = choices;
            Json weights = Json::array();
            for (const Weight& w : outcome.final_weights) {
                weights.push_back(weight_json(w));
            }
            j["finalWeights"] = weights;
            emit(ctx, output, j);
            return exit_ok;
        }

        // ----------------------------------------------------------- estimate
        if (estimate_cmd->parsed()) {
            ctx.seed = seed;
            if (format != "json" && format != "csv") {
                throw UsageError("usage", "--format must be json or csv");
            }
            const Graph g = load_graph(ctx, file);
            const auto og = make_order(g, order);
            const auto spec = parse_w0(w0_spec, g, seed, false);
            const auto report = estimate_inclusion(og, spec.w0, samples, seed, jobs);
            if (format == "csv") {
                std::string text = "vertex,estimate,ciLow,ciHigh,hits\n";
                for (Vertex v = 0; v < report.per_vertex.size(); ++v) {
                    const auto& e = report.per_vertex[v];
                    text += std::to_string(v + 1) + "," + format_real(e.estimate) + "," + format_real(e.ci_low) + "," +
                            format_real(e.ci_high) + "," + std::to_string(e.hits) + "\n";
                }
                write_text(ctx, output, text);
                return exit_ok;
            }
            Json j = envelope(ctx, "estimate");
            j["samples"] = report.samples;
            j["seed"] = report.seed;
            j["wallTimeSeconds"] = report.wall_time.count();
            j["order"] = order;
            j["w0"] = w0_json(spec);
            Json rows = Json::array();
            for (Vertex v = 0; v < report.per_vertex.size(); ++v) {
                const auto& e = report.per_vertex[v];
                rows.push_back({{"vertex", v + 1},
                                {"estimate", e.estimate},
                                {"ciLow", e.ci_low},
                                {"ciHigh", e.ci_high},
                                {"hits", e.hits}});
            }
            j["perVertex"] = rows;
            if (!report.per_vertex.empty()) {
                const auto m = empirical_min_inclusion(report);
                j["min"] = {{"vertex", m.vertex + 1}, {"estimate", m.estimate}, {"ciLow", m.ci_low}};
            } else {
                j["min"] = nullptr;
            }
            emit(ctx, output, j);
            return exit_ok;
        }

        // -------------------------------------------------------------- exact
        if (exact_cmd->parsed()) {
            const Graph g = load_graph(ctx, file);
            const auto og = make_order(g, order);
            const auto spec = parse_w0(w0_spec, g, seed, false);
            std::optional<std::size_t> k;
            if (target) {
                k = parse_target(*target, og);
            }
            const auto report = exact_inclusion(og, spec.w0, k, EnumerationBudget{max_steps});
            Json j = envelope(ctx, "exact");
            j["order"] = order_json(og);
            j["w0"] = w0_json(spec);
            Json rows = Json::array();
            const std::size_t steps = report.truncation_step.value_or(og.size());
            for (std::size_t p = 0; p < steps; ++p) {
                const Vertex v = og.vertex_at(p);
                rows.push_back({{"vertex", v + 1}, {"position", p + 1}, {"probability", report.per_vertex_inclusion[v]}});
            }
            j["perVertexInclusion"] = rows;
            j["pathCount"] = report.path_count;
            j["probabilityMass"] = report.probability_mass;
            j["truncationStep"] = report.truncation_step ? Json(*report.truncation_step) : Json(nullptr);
            emit(ctx, output, j);
            return exit_ok;
        }

        // --------------------------------------------------------------- chif
        if (chif_cmd->parsed()) {
            const Graph g = load_graph(ctx, file);
            const auto cert = fractional_chromatic_number(g, cap);
            Json j = envelope(ctx, "chif");
            j["n"] = g.vertex_count();
            j["value"] = to_fraction_string(cert.value);
            j["valueDecimal"] = cert.value.convert_to<double>();
            Json sets = Json::array();
            for (std::size_t s = 0; s < cert.sets.size(); ++s) {
                Json ids = Json::array();
                for (Vertex v : cert.sets[s]) {
                    ids.push_back(v + 1);
                }
                sets.push_back({{"vertices", ids}, {"weight", to_fraction_string(cert.weights[s])}});
            }
            j["sets"] = sets;
            Json clique = Json::array();
            for (const auto& y : cert.clique_weights) {
                clique.push_back(to_fraction_string(y));
            }
            j["cliqueWeights"] = clique;
            j["verified"] = true;
            emit(ctx, output, j);
            return exit_ok;
        }

        // ------------------------------------------------------------- verify
        if (v_mainproc->parsed()) {
            ctx.seed = seed;
            const Graph g = load_graph(ctx, file);
            const auto og = make_order(g, order);
            const auto spec = parse_w0(w0_spec, g, seed, false);
            const std::size_t k = parse_target(*target, og);
            if (!(epsilon > 0.0 && epsilon <= 1.0)) {
                throw UsageError("usage", "--epsilon must lie in (0, 1]");
            }
            const auto inst = mainproc_check_and_bound(og, spec.w0, k, epsilon);
            bool pass = inst.valid;
            Json j = envelope(ctx, "verify mainproc");
            j["theorem"] = "mainproc";
            j["order"] = order_json(og);
            j["w0"] = w0_json(spec);
            j["epsilon"] = epsilon;
            j["target"] = {{"position", k + 1}, {"vertex", inst.target_vertex + 1}};
            j["conditionLhs"] = inst.condition_lhs;
            j["valid"] = inst.valid;
            j["bound"] = inst.bound;
            if (with_exact) {
                const double p = exact_inclusion(og, spec.w0, k).per_vertex_inclusion[inst.target_vertex];
                j["exact"] = {{"probability", p}, {"meetsBound", p >= inst.bound}};
                pass = pass && p >= inst.bound;
            }
            if (v_mainproc->count("--samples") > 0 && samples > 0) {
                std::vector<double> bound(g.vertex_count(), 0.0);
                bound[inst.target_vertex] = inst.bound;
                bool ok = false;
                j["empirical"] = empirical_check(og, spec.w0, bound, samples, seed, jobs, sigmas, ok);
                pass = pass && ok;
            }
            j["pass"] = pass;
            emit(ctx, output, j);
            return pass ? exit_ok : exit_failed;
        }

        if (v_main->parsed()) {
            ctx.seed = seed;
            const Graph g = load_graph(ctx, file);
            Json j = envelope(ctx, "verify main");
            j["theorem"] = "main";
            j["n"] = g.vertex_count();
            j["m"] = g.edge_count();
            try {
                const auto driver = theorem_main_driver(g);
                const auto spec = parse_w0(w0_spec.empty() ? "auto" : w0_spec, g, seed, false);
                const std::size_t n = g.vertex_count();
                std::vector<double> bound(n);
                std::vector<double> lhs(n);
                std::vector<Vertex> violations;
                for (std::size_t p = 0; p < n; ++p) {
                    const auto inst = mainproc_check_and_bound(driver.ordered, spec.w0, p, driver.epsilon);
                    bound[inst.target_vertex] = inst.bound;
                    lhs[inst.target_vertex] = inst.condition_lhs;
                    if (!inst.valid) {
                        violations.push_back(inst.target_vertex);
                    }
                }
                std::sort(violations.begin(), violations.end());
                const auto worst = std::max_element(lhs.begin(), lhs.end()) - lhs.begin();
                const double min_bound = *std::min_element(bound.begin(), bound.end());
                bool pass = violations.empty();
                j["degeneracy"] = driver.degeneracy;
                j["order"] = "degeneracy";
                j["w0Mode"] = spec.mode;
                j["w0"] = w0_json(spec);
                j["epsilon"] = driver.epsilon;
                j["bound"] = min_bound;
                j["chiFUpper"] = 1.0 / min_bound;
                Json bad = Json::array();
                for (Vertex v : violations) {
                    bad.push_back(v + 1);
                }
                j["conditions"] = {{"allHold", violations.empty()},
                                   {"maxLhs", lhs[worst]},
                                   {"maxLhsVertex", worst + 1},
                                   {"violations", bad}};
                if (per_vertex) {
                    Json rows = Json::array();
                    for (Vertex v = 0; v < n; ++v) {
                        rows.push_back({{"vertex", v + 1},
                                        {"leftDegree", driver.ordered.left_degree(driver.ordered.position_of(v))},
                                        {"conditionLhs", lhs[v]},
                                        {"bound", bound[v]}});
                    }
                    j["perVertex"] = rows;
                }
                if (samples > 0) {
                    bool ok = false;
                    j["empirical"] = empirical_check(driver.ordered, spec.w0, bound, samples, seed, jobs, sigmas, ok);
                    pass = pass && ok;
                } else {
                    j["empirical"] = nullptr;
                }
                j["pass"] = pass;
                emit(ctx, output, j);
                return pass ? exit_ok : exit_failed;
            } catch (const std::domain_error& e) {
                j["pass"] = false;
                j["reason"] = e.what();
                emit(ctx, output, j);
                return exit_failed;
            }
        }

        if (v_maingen->parsed()) {
            ctx.seed = seed;
            const Graph g = load_graph(ctx, file);
            const std::size_t n = g.vertex_count();
            Json j = envelope(ctx, "verify maingen");
            j["theorem"] = "maingen";
            j["alpha"] = maingen_alpha();
            j["epsilon"] = 0.5;
            std::optional<OrderedGraph> og;
            std::vector<double> p;
            try {
                if (p_spec == "shearer") {
                    auto sw = local_shearer_weights(g, shearer_c);
                    j["shearerC"] = sw.c;
                    og.emplace(std::move(sw.ordered));
                    p = std::move(sw.p);
                    j["order"] = "degree";
                } else {
                    og.emplace(make_order(g, order));
                    p = !p_spec.empty() && p_spec[0] == '@' ? read_vertex_values(p_spec.substr(1), n, "probability")
                                                            : std::vector<double>(n, parse_real(p_spec, "--p"));
                    j["order"] = order;
                }
            } catch (const NoFeasibleConstant& e) {
                j["pass"] = false;
                j["reason"] = e.what();
                emit(ctx, output, j);
                return exit_failed;
            } catch (const std::domain_error& e) {
                j["pass"] = false;
                j["reason"] = e.what();
                emit(ctx, output, j);
                return exit_failed;
            }
            j["shrink"] = shrink;
            try {
                const auto report = maingen_driver(*og, p, shrink);
                bool pass = true;
                Json rows = Json::array();
                for (Vertex v = 0; v < n; ++v) {
                    const auto& c = report.checks[v];
                    rows.push_back({{"vertex", v + 1},
                                    {"p", c.lhs},
                                    {"productRhs", c.rhs},
                                    {"ok", c.ok},
                                    {"w0", report.w0[v]},
                                    {"conditionLhs", report.condition_lhs[v]},
                                    {"bound", report.bound[v]}});
                }
                j["conditions"] = {{"allHold", true}, {"worstVertex", nullptr}};
                j["perVertex"] = rows;
                const double min_bound =
                    n == 0 ? 0.0 : *std::min_element(report.bound.begin(), report.bound.end());
                j["minBound"] = min_bound;
                j["chiFUpper"] = min_bound > 0.0 ? Json(1.0 / min_bound) : Json(nullptr);
                if (with_exact) {
                    const auto exact = exact_inclusion(*og, report.w0);
                    bool all = true;
                    Json probs = Json::array();
                    for (Vertex v = 0; v < n; ++v) {
                        probs.push_back(exact.per_vertex_inclusion[v]);
                        all = all && exact.per_vertex_inclusion[v] >= report.bound[v];
                    }
                    j["exact"] = {{"probabilities", probs}, {"allMeetBound", all}};
                    pass = pass && all;
                }
                if (v_maingen->count("--samples") > 0 && samples > 0) {
                    bool ok = false;
                    j["empirical"] = empirical_check(*og, report.w0, report.bound, samples, seed, jobs, sigmas, ok);
                    pass = pass && ok;
                }
                j["pass"] = pass;
                emit(ctx, output, j);
                return pass ? exit_ok : exit_failed;
            } catch (const ConditionViolated& e) {
                j["conditions"] = {{"allHold", false}, {"worstVertex", e.worst_vertex() + 1}};
                j["pass"] = false;
                j["reason"] = e.what();
                emit(ctx, output, j);
                return exit_failed;
            }
        }

        if (v_claims->parsed()) {
            ctx.seed = seed;
            const Graph g = load_graph(ctx, file);
            const auto og = make_order(g, order);
            const auto spec = parse_w0(w0_spec.empty() ? "random" : w0_spec, g, seed, true);
            const EnumerationBudget budget{max_steps};
            const bool triangle_free = is_triangle_free(g);
            std::vector<std::size_t> targets;
            if (target) {
                targets.push_back(parse_target(*target, og));
            } else {
                for (std::size_t k = 0; k < og.size(); ++k) {
                    targets.push_back(k);
                }
            }
            double worst_procrel = 0.0;
            double worst_martingale = 0.0;
            double worst_x = 0.0;
            double worst_final = 0.0;
            double worst_inclusion = 0.0;
            auto identity = [](const IdentityCheck& c) {
                return Json{{"lhs", c.lhs}, {"rhs", c.rhs}, {"deviation", c.deviation}};
            };
            Json rows = Json::array();
            for (std::size_t k : targets) {
                Json row;
                row["position"] = k + 1;
                row["vertex"] = og.vertex_at(k) + 1;
                const auto procrel = verify_claim_procrel(og, spec.w0, k, budget);
                worst_procrel = std::max(worst_procrel, procrel.deviation);
                row["procrel"] = identity(procrel);
                if (triangle_free) {
                    const double mart = verify_claim_martingale(og, spec.w0, k, budget);
                    const auto ex = verify_claim_expected_x(og, spec.w0, k, budget);
                    const double fin = verify_claim_final_weight(og, spec.w0, k, budget);
                    const auto inc = verify_claim_inclusion(og, spec.w0, k, budget);
                    worst_martingale = std::max(worst_martingale, mart);
                    worst_x = std::max(worst_x, ex.deviation);
                    worst_final = std::max(worst_final, fin);
                    worst_inclusion = std::max(worst_inclusion, inc.deviation);
                    row["martingale"] = mart;
                    row["expectedX"] = identity(ex);
                    row["finalWeight"] = fin;
                    row["inclusion"] = identity(inc);
                } else {
                    row["martingale"] = nullptr;
                    row["expectedX"] = nullptr;
                    row["finalWeight"] = nullptr;
                    row["inclusion"] = nullptr;
                }
                rows.push_back(row);
            }
            auto summary = [&](double worst, bool needs_triangle_free) {
                if (needs_triangle_free && !triangle_free) {
                    return Json{{"maxDeviation", nullptr}, {"pass", nullptr}, {"skipped", true}};
                }
                return Json{{"maxDeviation", worst}, {"pass", worst <= tolerance}, {"skipped", false}};
            };
            Json j = envelope(ctx, "verify claims");
            j["theorem"] = "claims";
            j["order"] = order_json(og);
            j["w0Mode"] = spec.mode;
            j["w0"] = spec.w0;
            j["triangleFree"] = triangle_free;
            j["tolerance"] = tolerance;
            j["summary"] = {{"procrel", summary(worst_procrel, false)},
                            {"martingale", summary(worst_martingale, true)},
                            {"expectedX", summary(worst_x, true)},
                            {"finalWeight", summary(worst_final, true)},
                            {"inclusion", summary(worst_inclusion, true)}};
            j["targets"] = rows;
            bool pass = worst_procrel <= tolerance;
            if (triangle_free) {
                pass = pass && worst_martingale <= tolerance && worst_x <= tolerance && worst_final <= tolerance &&
                       worst_inclusion <= tolerance;
            }
            j["pass"] = pass;
            emit(ctx, output, j);
            return pass ? exit_ok : exit_failed;
        }

        // -------------------------------------------------------------- sweep
        if (sweep_main->parsed()) {
            ctx.seed = seed;
            if (sweep_family != "random-bipartite") {
                throw UsageError("usage", "sweep supports --family random-bipartite only");
            }
            if (samples == 0) {
                throw UsageError("usage", "--samples must be positive");
            }
            std::string text = "d,n,m,w0,epsilon,bound,minInclusion,ciLow,chiFUpper\n";
            for (std::size_t d : parse_list(d_list)) {
                if (d < 3) {
                    throw UsageError("usage", "--d values must be at least 3");
                }
                const std::size_t a = side != 0 ? side : std::max<std::size_t>(64, 8 * d);
                const auto bip = gen::random_bipartite_with_degeneracy(a, a, d, replica_seed(seed, d));
                const auto driver = theorem_main_driver(bip.graph);
                const std::vector<double> w0(bip.graph.vertex_count(), driver.w0);
                const auto report = estimate_inclusion(driver.ordered, w0, samples, seed, jobs);
                const auto lowest = empirical_min_inclusion(report);
                text += std::to_string(driver.degeneracy) + "," + std::to_string(bip.graph.vertex_count()) + "," +
                        std::to_string(bip.graph.edge_count()) + "," + format_real(driver.w0) + "," +
                        format_real(driver.epsilon) + "," + format_real(driver.bound) + "," +
                        format_real(lowest.estimate) + "," + format_real(lowest.ci_low) + "," +
                        format_real(driver.chi_f_upper) + "\n";
            }
            write_text(ctx, output, text);
            return exit_ok;
        }
    } catch (const UsageError& e) {
        return fail(e.kind(), e.what());
    } catch (const FormatError& e) {
        return fail("format", e.what());
    } catch (const BudgetExceeded& e) {
        return fail("budget", e.what(), {{"requiredSteps", e.required_steps()}});
    } catch (const EnumerationCapExceeded& e) {
        return fail("cap", e.what(), {{"partialCount", e.partial_count()}});
    } catch (const std::invalid_argument& e) {
        return fail("usage", e.what());
    } catch (const std::domain_error& e) {
        return fail("precondition", e.what());
    } catch (const std::logic_error& e) {
        fail("internal", e.what());
        return exit_failed;
    } catch (const std::exception& e) {
        return fail("runtime", e.what());
    }
    return fail("usage", "no command given");
}

} // namespace tfcolor::cli
