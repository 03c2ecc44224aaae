// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "support/corpus.hpp"
#include "support/oracles.hpp"
#include "tfcolor/cli.hpp"
#include "tfcolor/dimacs.hpp"
#include "tfcolor/estimator.hpp"
#include "tfcolor/exact.hpp"
#include "tfcolor/frac_chrom.hpp"
#include "tfcolor/generators.hpp"
#include "tfcolor/theorems.hpp"

using namespace tfcolor;
using tfcolor::testing::triangle_free_corpus;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass;
    std::string detail;
};

std::vector<double> draw_w0(std::size_t n, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> w(n);
    for (double& x : w) {
        x = 0.7 * (1.0 - unit(rng));
    }
    return w;
}

OrderedGraph shuffled(const Graph& g, std::mt19937_64& rng)
{
    std::vector<Vertex> order(g.vertex_count());
    std::iota(order.begin(), order.end(), Vertex{0});
    std::shuffle(order.begin(), order.end(), rng);
    return OrderedGraph(g, order);
}

std::string sci(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

/// Runs `check` for every (corpus graph, shuffled order, draw, target) and
/// returns the largest value it reports.
double corpus_max(std::uint64_t seed, int draws, const std::function<double(const OrderedGraph&,
                                                                             const std::vector<double>&, std::size_t)>& check,
                  std::size_t& instances)
{
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    instances = 0;
    for (const auto& entry : triangle_free_corpus()) {
        for (int d = 0; d < draws; ++d) {
            const auto og = shuffled(entry.graph, rng);
            const auto w0 = draw_w0(og.size(), rng);
            for (std::size_t k = 0; k < og.size(); ++k) {
                worst = std::max(worst, check(og, w0, k));
                ++instances;
            }
        }
    }
    return worst;
}

Outcome identity_criterion(std::uint64_t seed, double tol,
                           const std::function<double(const OrderedGraph&, const std::vector<double>&, std::size_t)>& f)
{
    std::size_t instances = 0;
    const double worst = corpus_max(seed, 5, f, instances);
    return {worst <= tol, std::to_string(instances) + " (graph, w0, k) instances, max deviation " + sci(worst) +
                              " <= " + sci(tol)};
}

Outcome criterion_pathwise()
{
    std::mt19937_64 rng(104);
    const auto& corpus = triangle_free_corpus();
    double worst = 0.0;
    std::size_t finite = 0;
    const std::size_t runs = 100000;
    for (std::size_t r = 0; r < runs; ++r) {
        const auto& g = corpus[r % corpus.size()].graph;
        const auto og = shuffled(g, rng);
        const auto w0 = draw_w0(og.size(), rng);
        const std::size_t k = rng() % og.size();
        const auto out = run_modified_process(og, w0, k, uniform_stream(rng()));
        if (std::isinf(out.x)) {
            continue;
        }
        ++finite;
        const double expected = w0[og.vertex_at(k)] * std::exp(out.x);
        worst = std::max(worst, std::abs(out.final_weights[og.vertex_at(k)].value() - expected) / expected);
    }
    return {worst <= 1e-12, std::to_string(runs) + " runs (" + std::to_string(finite) +
                                " with finite X), max relative deviation " + sci(worst)};
}

Outcome criterion_core_inequality()
{
    std::mt19937_64 rng(106);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto& corpus = triangle_free_corpus();
    int violations = 0;
    double tightest = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 100; ++i) {
        const auto og = shuffled(corpus[rng() % corpus.size()].graph, rng);
        auto w0 = draw_w0(og.size(), rng);
        const std::size_t k = rng() % og.size();
        const double eps = 1.0 - unit(rng);
        auto inst = mainproc_check_and_bound(og, w0, k, eps);
        if (!inst.valid) {
            // scale all weights by one factor so that the condition holds
            const double scale = std::min(1.0, eps / inst.condition_lhs);
            for (double& x : w0) {
                x *= scale;
            }
            inst = mainproc_check_and_bound(og, w0, k, eps);
            while (!inst.valid) {
                for (double& x : w0) {
                    x *= 0.9;
                }
                inst = mainproc_check_and_bound(og, w0, k, eps);
            }
        }
        const double p = exact_inclusion(og, w0, k).per_vertex_inclusion[inst.target_vertex];
        violations += p >= inst.bound ? 0 : 1;
        tightest = std::min(tightest, p / inst.bound);
    }
    return {violations == 0,
            "100 valid instances, " + std::to_string(violations) + " violations, min exact/bound ratio " + sci(tightest)};
}

Outcome criterion_main_end_to_end()
{
    const auto start = Clock::now();
    const std::size_t side = 1000;
    const auto bip = gen::random_bipartite_with_degeneracy(side, side, 32, 20240607);
    const auto path = (std::filesystem::temp_directory_path() / "tfcolor_acceptance_bipartite.dimacs").string();
    {
        std::ofstream f(path);
        write_dimacs(f, bip.graph, "acceptance");
    }
    std::ostringstream out;
    std::ostringstream err;
    std::istringstream in;
    const int code =
        cli::cli_main({"verify", "main", path, "--samples", "1000000", "--seed", "7"}, out, err, in);
    std::filesystem::remove(path);
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (code == 2) {
        return {false, "cli error: " + err.str()};
    }
    const auto j = nlohmann::json::parse(out.str());
    const std::size_t d = j["degeneracy"];
    const double ld = std::log(static_cast<double>(d));
    const double eps = 1.0 / (2.0 * ld);
    const double w0 = (ld - 2.0 * std::log(ld)) / (2.0 * static_cast<double>(d));
    const double bound = -std::expm1(-eps) / (2.0 * eps) * w0;
    const double p_min = j["empirical"]["minEstimate"];
    const double se = std::sqrt(p_min * (1.0 - p_min) / 1e6);
    const bool ok = code == 0 && d >= 28 && d <= 36 && p_min + 3.0 * se >= bound && seconds < 300.0 &&
                    std::abs(j["bound"].get<double>() - bound) <= 1e-15;
    return {ok, "n=" + std::to_string(bip.graph.vertex_count()) + " d=" + std::to_string(d) + ", min inclusion " +
                    sci(p_min) + " + 3*SE " + sci(3.0 * se) + " >= bound " + sci(bound) + ", exit " +
                    std::to_string(code) + ", " + sci(seconds) + " s"};
}

Outcome criterion_maingen_c5()
{
    const auto og = natural_order(gen::cycle(5));
    const std::vector<double> p(5, 0.1);
    const auto report = maingen_driver(og, p);
    const auto exact = exact_inclusion(og, report.w0);
    double lowest = 1.0;
    bool ok = true;
    for (Vertex v = 0; v < 5; ++v) {
        lowest = std::min(lowest, exact.per_vertex_inclusion[v]);
        ok = ok && exact.per_vertex_inclusion[v] >= 0.0196 && exact.per_vertex_inclusion[v] >= report.bound[v];
    }
    return {ok, "min exact P(v in I) " + sci(lowest) + " >= 0.0196, alpha*p " + sci(report.bound[0])};
}

Outcome criterion_chif()
{
    const auto start = Clock::now();
    bool ok = true;
    std::string detail;
    auto expect = [&](const std::string& name, const Graph& g, const Rational& value) {
        const Rational got = fractional_chromatic_number(g).value;
        if (got != value) {
            ok = false;
            detail += name + " gave " + to_fraction_string(got) + "; ";
        }
    };
    for (std::size_t n = 1; n <= 6; ++n) {
        expect("K" + std::to_string(n), gen::complete(n), Rational(static_cast<long>(n)));
    }
    expect("C5", gen::cycle(5), Rational(5, 2));
    expect("Petersen", gen::petersen(), Rational(5, 2));
    expect("K3,3", gen::complete_bipartite(3, 3), Rational(2));
    const Rational c5(5, 2);
    expect("Grotzsch", gen::grotzsch(), c5 + 1 / c5);
    expect("Grotzsch", gen::grotzsch(), Rational(29, 10));
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    ok = ok && seconds < 60.0;
    return {ok, detail + "K1..K6, C5, Petersen, K3,3, Grotzsch = 29/10 in " + sci(seconds) + " s"};
}

Outcome criterion_oracle_estimator()
{
    std::mt19937_64 rng(110);
    const auto& corpus = triangle_free_corpus();
    std::vector<const Graph*> picks;
    for (const auto& entry : corpus) {
        if (entry.graph.vertex_count() >= 6 && entry.graph.vertex_count() <= 12) {
            picks.push_back(&entry.graph);
        }
    }
    std::shuffle(picks.begin(), picks.end(), rng);
    picks.resize(10);
    picks.back() = &corpus.back().graph;  // Grötzsch
    std::size_t within = 0;
    std::size_t total = 0;
    const std::uint64_t samples = 1'000'000;
    for (const Graph* g : picks) {
        const auto og = shuffled(*g, rng);
        const auto w0 = draw_w0(og.size(), rng);
        const auto exact = exact_inclusion(og, w0);
        const auto est = estimate_inclusion(og, w0, samples, rng());
        for (Vertex v = 0; v < og.size(); ++v) {
            const double p = exact.per_vertex_inclusion[v];
            within += std::abs(est.per_vertex[v].estimate - p) <= 4.0 * standard_error(p, samples) ? 1 : 0;
            ++total;
        }
    }
    const double frac = static_cast<double>(within) / static_cast<double>(total);
    return {frac >= 0.95, std::to_string(within) + "/" + std::to_string(total) + " vertex estimates within 4 SE"};
}

Outcome criterion_independence()
{
    std::uint64_t seed = 111;
    std::uint64_t runs = 0;
    std::uint64_t bad = 0;
    for (const auto& entry : triangle_free_corpus()) {
        const Graph& g = entry.graph;
        const auto og = degeneracy_order(g).ordered;
        const std::vector<double> w0(g.vertex_count(), 0.6);
        Sampler sampler(og, w0);
        auto uniform = uniform_stream(seed++);
        const auto edges = g.edges();
        for (int s = 0; s < 100000; ++s) {
            sampler.run(uniform);
            for (auto [u, v] : edges) {
                if (sampler.in_set_at(og.position_of(u)) && sampler.in_set_at(og.position_of(v))) {
                    ++bad;
                    break;
                }
            }
            ++runs;
        }
    }
    return {bad == 0, std::to_string(runs) + " sampled sets, " + std::to_string(bad) + " containing an edge"};
}

Outcome criterion_degeneracy()
{
    std::mt19937_64 rng(112);
    int mismatches = 0;
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 1 + rng() % 64;
        const double p = std::uniform_real_distribution<double>(0.0, 0.5)(rng);
        const Graph g = gen::random_gnp(n, p, rng());
        const auto result = degeneracy_order(g);
        if (result.degeneracy != tfcolor::testing::naive_degeneracy(g) ||
            result.ordered.max_left_degree() != result.degeneracy) {
            ++mismatches;
        }
    }
    return {mismatches == 0, "200 random graphs, " + std::to_string(mismatches) + " mismatches"};
}

} // namespace

int main()
{
    struct Criterion {
        int id;
        std::string name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "change-of-measure identity", [] {
             return identity_criterion(101, 1e-10, [](const auto& og, const auto& w0, std::size_t k) {
                 return verify_claim_procrel(og, w0, k).deviation;
             });
         }},
        {2, "martingale property", [] {
             return identity_criterion(102, 1e-12, [](const auto& og, const auto& w0, std::size_t k) {
                 return verify_claim_martingale(og, w0, k);
             });
         }},
        {3, "expected X", [] {
             return identity_criterion(103, 1e-12, [](const auto& og, const auto& w0, std::size_t k) {
                 return verify_claim_expected_x(og, w0, k).deviation;
             });
         }},
        {4, "pathwise final weight", criterion_pathwise},
        {5, "inclusion integrand identity", [] {
             return identity_criterion(105, 1e-10, [](const auto& og, const auto& w0, std::size_t k) {
                 return verify_claim_inclusion(og, w0, k).deviation;
             });
         }},
        {6, "core inclusion inequality", criterion_core_inequality},
        {7, "degenerate bound end to end", criterion_main_end_to_end},
        {8, "product-condition bound on C5", criterion_maingen_c5},
        {9, "fractional chromatic golden values", criterion_chif},
        {10, "oracle/estimator agreement", criterion_oracle_estimator},
        {11, "independence safety", criterion_independence},
        {12, "degeneracy against naive oracle", criterion_degeneracy},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = Clock::now();
        Outcome outcome{false, ""};
        try {
            outcome = c.run();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
        failures += outcome.pass ? 0 : 1;
        std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name
                  << "): " << outcome.detail << " [" << sci(seconds) << " s]" << std::endl;
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
