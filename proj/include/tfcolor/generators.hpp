#pragma once

// Deterministic and seeded generators of (mostly triangle-free) test graphs.
// Seeded generators are pure functions of (parameters, seed).

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "tfcolor/graph.hpp"
#include "tfcolor/rng.hpp"

namespace tfcolor::gen {

inline Graph edgeless(std::size_t n) { return Graph(n); }

inline Graph path(std::size_t n)
{
    if (n == 0) {
        throw std::invalid_argument("path needs at least one vertex");
    }
    std::vector<Edge> edges;
    for (Vertex i = 0; i + 1 < n; ++i) {
        edges.emplace_back(i, i + 1);
    }
    return Graph(n, edges);
}

inline Graph cycle(std::size_t n)
{
    if (n < 3) {
        throw std::invalid_argument("cycle needs n >= 3, got " + std::to_string(n));
    }
    std::vector<Edge> edges;
    for (Vertex i = 0; i < n; ++i) {
        edges.emplace_back(i, static_cast<Vertex>((i + 1) % n));
    }
    return Graph(n, edges);
}

inline Graph complete(std::size_t n)
{
    if (n == 0) {
        throw std::invalid_argument("complete graph needs at least one vertex");
    }
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            edges.emplace_back(u, v);
        }
    }
    return Graph(n, edges);
}

/// K_{a,b}: vertices 0..a-1 on one side, a..a+b-1 on the other.
inline Graph complete_bipartite(std::size_t a, std::size_t b)
{
    if (a == 0 || b == 0) {
        throw std::invalid_argument("complete bipartite graph needs both sides non-empty");
    }
    std::vector<Edge> edges;
    for (Vertex u = 0; u < a; ++u) {
        for (std::size_t j = 0; j < b; ++j) {
            edges.emplace_back(u, static_cast<Vertex>(a + j));
        }
    }
    return Graph(a + b, edges);
}

/// Outer 5-cycle 0..4, spokes i -- i+5, inner pentagram on 5..9.
inline Graph petersen()
{
    std::vector<Edge> edges;
    for (Vertex i = 0; i < 5; ++i) {
        edges.emplace_back(i, (i + 1) % 5);
        edges.emplace_back(i, i + 5);
        edges.emplace_back(i + 5, (i + 2) % 5 + 5);
    }
    return Graph(10, edges);
}

/// Mycielskian M(G): originals 0..n-1, shadows n..2n-1 (shadow of i is n+i),
/// apex 2n. Shadow n+i is joined to the neighbours of i and to the apex.
inline Graph mycielski(const Graph& g)
{
    const auto n = static_cast<Vertex>(g.vertex_count());
    std::vector<Edge> edges;
    edges.reserve(3 * g.edge_count() + n);
    for (auto [u, v] : g.edges()) {
        edges.emplace_back(u, v);
        edges.emplace_back(u, n + v);
        edges.emplace_back(v, n + u);
    }
    for (Vertex i = 0; i < n; ++i) {
        edges.emplace_back(n + i, 2 * n);
    }
    return Graph(2 * static_cast<std::size_t>(n) + 1, edges);
}

/// Grötzsch graph, M(C_5): 11 vertices, 20 edges.
inline Graph grotzsch() { return mycielski(cycle(5)); }

/// Each of the a*b cross pairs (row-major) consumes one uniform and becomes an
/// edge when the uniform is below `edge_prob`.
inline Graph random_bipartite(std::size_t a, std::size_t b, double edge_prob, std::uint64_t seed)
{
    if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
        throw std::invalid_argument("edge probability must lie in [0,1]");
    }
    auto uniform = uniform_stream(seed);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < a; ++u) {
        for (std::size_t j = 0; j < b; ++j) {
            if (uniform() < edge_prob) {
                edges.emplace_back(u, static_cast<Vertex>(a + j));
            }
        }
    }
    return Graph(a + b, edges);
}

struct RandomBipartiteDegeneracy {
    Graph graph;
    /// Threshold p such that random_bipartite(a, b, p, seed) reproduces `graph`.
    double edge_prob;
    std::size_t degeneracy;
};

/// Smallest member of the seeded random_bipartite(a, b, p, seed) family (as p
/// grows) whose degeneracy equals `target`. The family is nested in p and one
/// edge raises degeneracy by at most one, so the target is always hit when
/// target <= min(a, b).
inline RandomBipartiteDegeneracy random_bipartite_with_degeneracy(std::size_t a, std::size_t b,
                                                                  std::size_t target,
                                                                  std::uint64_t seed)
{
    if (target == 0 || target > std::min(a, b)) {
        throw std::invalid_argument("degeneracy " + std::to_string(target) +
                                    " unreachable with sides " + std::to_string(a) + "," +
                                    std::to_string(b));
    }
    struct Draw {
        double u;
        Edge e;
    };
    auto uniform = uniform_stream(seed);
    std::vector<Draw> draws;
    draws.reserve(a * b);
    for (Vertex u = 0; u < a; ++u) {
        for (std::size_t j = 0; j < b; ++j) {
            draws.push_back({uniform(), {u, static_cast<Vertex>(a + j)}});
        }
    }
    std::sort(draws.begin(), draws.end(), [](const Draw& x, const Draw& y) { return x.u < y.u; });

    auto prefix_graph = [&](std::size_t count) {
        std::vector<Edge> edges;
        edges.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            edges.push_back(draws[i].e);
        }
        return Graph(a + b, edges);
    };
    // smallest prefix length whose degeneracy reaches the target
    std::size_t lo = 0;
    std::size_t hi = draws.size();
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (degeneracy_order(prefix_graph(mid)).degeneracy >= target) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    // equal uniforms cannot be split by a threshold; extend over ties
    while (lo < draws.size() && lo > 0 && draws[lo].u == draws[lo - 1].u) {
        ++lo;
    }
    Graph g = prefix_graph(lo);
    const std::size_t d = degeneracy_order(g).degeneracy;
    const double p = lo < draws.size() ? draws[lo].u : 1.0;
    if (d != target) {
        throw std::runtime_error("tied edge draws skipped degeneracy " + std::to_string(target));
    }
    return {std::move(g), p, d};
}

struct RandomTriangleFree {
    Graph graph;
    std::size_t target_edges;
    std::size_t attempts;
    bool reached_target() const { return graph.edge_count() == target_edges; }
};

/// Inserts uniformly sampled non-edges that do not close a triangle until
/// `target_m` edges exist or 100*n^2 candidate draws have been spent.
inline RandomTriangleFree random_triangle_free(std::size_t n, std::size_t target_m, std::uint64_t seed)
{
    if (n < 2) {
        return {Graph(n), target_m, 0};
    }
    SplitMix64 engine(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<boost::dynamic_bitset<>> adj(n, boost::dynamic_bitset<>(n));
    std::vector<Edge> edges;
    const std::size_t cap = 100 * n * n;
    std::size_t attempts = 0;
    while (edges.size() < target_m && attempts < cap) {
        ++attempts;
        const std::size_t u = pick(engine);
        const std::size_t v = pick(engine);
        if (u == v || adj[u][v] || adj[u].intersects(adj[v])) {
            continue;
        }
        adj[u][v] = true;
        adj[v][u] = true;
        edges.emplace_back(static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v)));
    }
    return {Graph(n, edges), target_m, attempts};
}

/// Erdős–Rényi G(n, p); not triangle-free in general.
inline Graph random_gnp(std::size_t n, double edge_prob, std::uint64_t seed)
{
    if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) {
        throw std::invalid_argument("edge probability must lie in [0,1]");
    }
    auto uniform = uniform_stream(seed);
    std::vector<Edge> edges;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v) {
            if (uniform() < edge_prob) {
                edges.emplace_back(u, v);
            }
        }
    }
    return Graph(n, edges);
}

} // namespace tfcolor::gen
