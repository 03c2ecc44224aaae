#pragma once

// Exact fractional chromatic number of small graphs.
//
// chi_f(G) = min sum_S x_S  s.t.  sum_{S containing v} x_S >= 1 for all v,
// x >= 0, S ranging over independent sets. Restricting S to maximal
// independent sets loses nothing: moving the weight of S onto any maximal
// superset keeps the objective and can only increase coverage.
//
// The LP is solved with the rational simplex; the optimal dual (a fractional
// clique y >= 0 with sum_{v in S} y_v <= 1 on every maximal S) is returned as
// well, so primal feasibility, dual feasibility and equal objectives can all be
// re-checked in exact arithmetic without trusting solver state.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tfcolor/graph.hpp"
#include "tfcolor/independent_sets.hpp"
#include "tfcolor/simplex.hpp"

namespace tfcolor {

using Rational = boost::multiprecision::cpp_rational;

/// "p/q", always with an explicit denominator.
inline std::string to_fraction_string(const Rational& r)
{
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

inline Rational parse_fraction(const std::string& text)
{
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        return Rational(boost::multiprecision::cpp_int(text));
    }
    return Rational(boost::multiprecision::cpp_int(text.substr(0, slash)),
                    boost::multiprecision::cpp_int(text.substr(slash + 1)));
}

struct FractionalColoring {
    std::vector<std::vector<Vertex>> sets;  ///< independent sets with positive weight
    std::vector<Rational> weights;
    Rational value;                          ///< sum of weights
    std::vector<Rational> clique_weights;   ///< dual certificate, indexed by vertex
};

/// Exact checks of a certificate: independence and non-negativity, coverage
/// >= 1 at every vertex, and value = sum of weights. When a dual is present it
/// is checked against every set in `family` and must match the value.
inline bool verify_fractional_coloring(const Graph& g, const FractionalColoring& cert,
                                       const IndependentSetFamily* family = nullptr)
{
    if (cert.sets.size() != cert.weights.size()) {
        return false;
    }
    std::vector<Rational> coverage(g.vertex_count(), Rational(0));
    Rational total(0);
    for (std::size_t s = 0; s < cert.sets.size(); ++s) {
        if (cert.weights[s] < 0 || !is_independent(g, cert.sets[s])) {
            return false;
        }
        for (Vertex v : cert.sets[s]) {
            if (v >= g.vertex_count()) {
                return false;
            }
            coverage[v] += cert.weights[s];
        }
        total += cert.weights[s];
    }
    if (total != cert.value) {
        return false;
    }
    for (const auto& c : coverage) {
        if (c < 1) {
            return false;
        }
    }
    if (family != nullptr && !cert.clique_weights.empty()) {
        Rational dual_total(0);
        for (const auto& y : cert.clique_weights) {
            if (y < 0) {
                return false;
            }
            dual_total += y;
        }
        for (const auto& set : family->sets) {
            Rational load(0);
            for (Vertex v : set) {
                load += cert.clique_weights[v];
            }
            if (load > 1) {
                return false;
            }
        }
        if (dual_total != cert.value) {
            return false;
        }
    }
    return true;
}

/// Exact chi_f with a certificate. Throws EnumerationCapExceeded when the graph
/// has more than `cap` maximal independent sets.
inline FractionalColoring fractional_chromatic_number(const Graph& g, std::size_t cap = 1'000'000)
{
    const std::size_t n = g.vertex_count();
    FractionalColoring cert;
    cert.value = 0;
    if (n == 0) {
        return cert;
    }
    const IndependentSetFamily family = enumerate_maximal_independent_sets(g, cap);
    const std::size_t m = family.sets.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(m, Rational(0)));
    for (std::size_t s = 0; s < m; ++s) {
        for (Vertex v : family.sets[s]) {
            a[v][s] = 1;
        }
    }
    auto solution = solve_lp(std::move(a), std::vector<Rational>(n, Rational(1)), std::vector<Rational>(m, Rational(1)));
    if (solution.status != LpStatus::optimal) {
        throw std::logic_error("covering LP did not reach optimality");
    }
    for (std::size_t s = 0; s < m; ++s) {
        if (solution.primal[s] > 0) {
            cert.sets.push_back(family.sets[s]);
            cert.weights.push_back(solution.primal[s]);
        }
    }
    cert.value = solution.objective;
    cert.clique_weights = std::move(solution.dual);
    if (!verify_fractional_coloring(g, cert, &family)) {
        throw std::logic_error("fractional colouring certificate failed exact re-verification");
    }
    return cert;
}

/// 1 / min_v q(v): the chi_f bound certified by any distribution over
/// independent sets that includes every vertex v with probability >= q(v).
inline double chi_f_upper_bound_from_inclusion(std::span<const double> q)
{
    if (q.empty()) {
        throw std::invalid_argument("no inclusion bounds given");
    }
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < q.size(); ++v) {
        if (!(q[v] > 0.0 && q[v] <= 1.0)) {
            throw std::invalid_argument("inclusion bound of vertex " + std::to_string(v + 1) +
                                        " must lie in (0,1], got " + std::to_string(q[v]));
        }
        lowest = std::min(lowest, q[v]);
    }
    return 1.0 / lowest;
}

} // namespace tfcolor
