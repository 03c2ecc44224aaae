#pragma once

// Undirected simple graphs, vertex orderings and the ordering-relative
// neighbourhoods N_L / N_R used throughout the library.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tfcolor {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Immutable undirected simple graph on vertices 0..n-1 stored as CSR with
/// sorted neighbour lists.
class Graph {
public:
    Graph() = default;

    /// Builds a graph from an edge list. Rejects self-loops, out-of-range
    /// endpoints and duplicate edges (in either orientation).
    Graph(std::size_t n, std::span<const Edge> edges) : offsets_(n + 1, 0)
    {
        for (auto [u, v] : edges) {
            if (u >= n || v >= n) {
                throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                            ") out of range for n=" + std::to_string(n));
            }
            if (u == v) {
                throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
            }
            ++offsets_[u + 1];
            ++offsets_[v + 1];
        }
        for (std::size_t i = 0; i < n; ++i) {
            offsets_[i + 1] += offsets_[i];
        }
        adjacency_.resize(offsets_[n]);
        std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
        for (auto [u, v] : edges) {
            adjacency_[fill[u]++] = v;
            adjacency_[fill[v]++] = u;
        }
        for (std::size_t v = 0; v < n; ++v) {
            auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
            auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
            std::sort(first, last);
            if (auto dup = std::adjacent_find(first, last); dup != last) {
                throw std::invalid_argument("duplicate edge (" + std::to_string(v) + "," +
                                            std::to_string(*dup) + ")");
            }
        }
        edge_count_ = edges.size();
    }

    Graph(std::size_t n, std::initializer_list<Edge> edges)
        : Graph(n, std::span<const Edge>(edges.begin(), edges.size()))
    {
    }

    explicit Graph(std::size_t n) : offsets_(n + 1, 0) {}

    std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return edge_count_; }

    std::span<const Vertex> neighbors(Vertex v) const
    {
        return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
    }

    std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

    bool has_edge(Vertex u, Vertex v) const
    {
        auto nu = neighbors(u);
        return std::binary_search(nu.begin(), nu.end(), v);
    }

    /// Edges as (u, v) with u < v, lexicographically sorted.
    std::vector<Edge> edges() const
    {
        std::vector<Edge> out;
        out.reserve(edge_count_);
        for (Vertex u = 0; u < vertex_count(); ++u) {
            for (Vertex v : neighbors(u)) {
                if (u < v) {
                    out.emplace_back(u, v);
                }
            }
        }
        return out;
    }

    std::size_t max_degree() const
    {
        std::size_t best = 0;
        for (Vertex v = 0; v < vertex_count(); ++v) {
            best = std::max(best, degree(v));
        }
        return best;
    }

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::size_t> offsets_;
    std::vector<Vertex> adjacency_;
    std::size_t edge_count_ = 0;
};

/// A graph together with a vertex ordering v_1..v_n. Positions are 0-based:
/// position 0 holds v_1. Left neighbours of v are its neighbours at earlier
/// positions, right neighbours those at later positions; both lists are
/// sorted by position.
class OrderedGraph {
public:
    OrderedGraph(Graph graph, std::vector<Vertex> order)
        : graph_(std::move(graph)), order_(std::move(order))
    {
        const std::size_t n = graph_.vertex_count();
        if (order_.size() != n) {
            throw std::invalid_argument("ordering has " + std::to_string(order_.size()) +
                                        " entries for a graph on " + std::to_string(n) + " vertices");
        }
        position_.assign(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const Vertex v = order_[i];
            if (v >= n || position_[v] != n) {
                throw std::invalid_argument("ordering is not a permutation (entry " +
                                            std::to_string(v) + " at position " + std::to_string(i) +
                                            ")");
            }
            position_[v] = i;
        }

        left_offsets_.assign(n + 1, 0);
        right_offsets_.assign(n + 1, 0);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t left = 0;
            for (Vertex u : graph_.neighbors(order_[i])) {
                left += position_[u] < i ? 1 : 0;
            }
            left_offsets_[i + 1] = left_offsets_[i] + left;
            right_offsets_[i + 1] = right_offsets_[i] + graph_.degree(order_[i]) - left;
        }
        left_.resize(left_offsets_[n]);
        right_.resize(right_offsets_[n]);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t l = left_offsets_[i];
            std::size_t r = right_offsets_[i];
            for (Vertex u : graph_.neighbors(order_[i])) {
                const std::size_t p = position_[u];
                if (p < i) {
                    left_[l++] = p;
                } else {
                    right_[r++] = p;
                }
            }
            std::sort(left_.begin() + static_cast<std::ptrdiff_t>(left_offsets_[i]),
                      left_.begin() + static_cast<std::ptrdiff_t>(left_offsets_[i + 1]));
            std::sort(right_.begin() + static_cast<std::ptrdiff_t>(right_offsets_[i]),
                      right_.begin() + static_cast<std::ptrdiff_t>(right_offsets_[i + 1]));
        }
    }

    const Graph& graph() const noexcept { return graph_; }
    std::size_t size() const noexcept { return order_.size(); }

    const std::vector<Vertex>& order() const noexcept { return order_; }
    Vertex vertex_at(std::size_t position) const { return order_[position]; }
    std::size_t position_of(Vertex v) const { return position_[v]; }

    /// Positions of the left neighbours of the vertex at `position`, ascending.
    std::span<const std::size_t> left_positions(std::size_t position) const
    {
        return {left_.data() + left_offsets_[position],
                left_offsets_[position + 1] - left_offsets_[position]};
    }

    std::span<const std::size_t> right_positions(std::size_t position) const
    {
        return {right_.data() + right_offsets_[position],
                right_offsets_[position + 1] - right_offsets_[position]};
    }

    /// N_L(v) as vertex ids, sorted by position.
    std::vector<Vertex> left_neighbors(Vertex v) const { return to_vertices(left_positions(position_[v])); }
    std::vector<Vertex> right_neighbors(Vertex v) const { return to_vertices(right_positions(position_[v])); }

    std::size_t left_degree(Vertex v) const
    {
        const std::size_t p = position_[v];
        return left_offsets_[p + 1] - left_offsets_[p];
    }

    std::size_t max_left_degree() const
    {
        std::size_t best = 0;
        for (std::size_t i = 0; i < size(); ++i) {
            best = std::max(best, left_offsets_[i + 1] - left_offsets_[i]);
        }
        return best;
    }

    bool is_left_neighbor(std::size_t of_position, std::size_t candidate) const
    {
        auto left = left_positions(of_position);
        return std::binary_search(left.begin(), left.end(), candidate);
    }

private:
    std::vector<Vertex> to_vertices(std::span<const std::size_t> positions) const
    {
        std::vector<Vertex> out;
        out.reserve(positions.size());
        for (std::size_t p : positions) {
            out.push_back(order_[p]);
        }
        return out;
    }

    Graph graph_;
    std::vector<Vertex> order_;
    std::vector<std::size_t> position_;
    std::vector<std::size_t> left_offsets_;
    std::vector<std::size_t> left_;
    std::vector<std::size_t> right_offsets_;
    std::vector<std::size_t> right_;
};

inline OrderedGraph order_by(Graph g, std::vector<Vertex> order)
{
    return OrderedGraph(std::move(g), std::move(order));
}

inline OrderedGraph natural_order(Graph g)
{
    std::vector<Vertex> order(g.vertex_count());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = static_cast<Vertex>(i);
    }
    return OrderedGraph(std::move(g), std::move(order));
}

struct DegeneracyResult {
    OrderedGraph ordered;
    std::size_t degeneracy;
};

/// Degeneracy ordering by repeated minimum-degree removal (smallest id wins
/// ties). The returned order is the reverse of the removal sequence, so every
/// vertex has at most `degeneracy` left neighbours.
inline DegeneracyResult degeneracy_order(const Graph& g)
{
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> degree(n);
    std::set<std::pair<std::size_t, Vertex>> queue;
    for (Vertex v = 0; v < n; ++v) {
        degree[v] = g.degree(v);
        queue.emplace(degree[v], v);
    }
    std::vector<char> removed(n, 0);
    std::vector<Vertex> removal;
    removal.reserve(n);
    while (!queue.empty()) {
        const auto [deg, v] = *queue.begin();
        queue.erase(queue.begin());
        removed[v] = 1;
        removal.push_back(v);
        for (Vertex u : g.neighbors(v)) {
            if (removed[u] == 0) {
                queue.erase({degree[u], u});
                queue.emplace(--degree[u], u);
            }
        }
    }
    std::reverse(removal.begin(), removal.end());
    OrderedGraph ordered(g, std::move(removal));
    const std::size_t d = ordered.max_left_degree();
    return {std::move(ordered), d};
}

/// Vertices sorted by non-increasing degree, ascending id among equal degrees.
inline OrderedGraph order_by_decreasing_degree(const Graph& g)
{
    std::vector<Vertex> order(g.vertex_count());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = static_cast<Vertex>(i);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    return OrderedGraph(g, std::move(order));
}

struct Triangle {
    Vertex a, b, c;
    friend bool operator==(const Triangle&, const Triangle&) = default;
};

/// Returns the lexicographically smallest triangle (a < b < c), or nullopt
/// when the graph is triangle-free.
inline std::optional<Triangle> find_triangle(const Graph& g)
{
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
        auto nu = g.neighbors(u);
        for (Vertex v : nu) {
            if (v <= u) {
                continue;
            }
            auto nv = g.neighbors(v);
            // smallest common neighbour above v
            auto i = std::upper_bound(nu.begin(), nu.end(), v);
            auto j = std::upper_bound(nv.begin(), nv.end(), v);
            while (i != nu.end() && j != nv.end()) {
                if (*i < *j) {
                    ++i;
                } else if (*j < *i) {
                    ++j;
                } else {
                    return Triangle{u, v, *i};
                }
            }
        }
    }
    return std::nullopt;
}

inline bool is_triangle_free(const Graph& g) { return !find_triangle(g).has_value(); }

/// y = max over vertices of the number of edges inside N_L(v), i.e. the
/// number of triangles in which v is the last vertex.
inline std::size_t local_triangle_bound(const OrderedGraph& og)
{
    const std::size_t n = og.size();
    std::vector<char> mark(n, 0);
    std::size_t best = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto left = og.left_positions(i);
        for (std::size_t p : left) {
            mark[p] = 1;
        }
        std::size_t inside = 0;
        for (std::size_t p : left) {
            for (std::size_t q : og.left_positions(p)) {
                inside += mark[q];
            }
        }
        for (std::size_t p : left) {
            mark[p] = 0;
        }
        best = std::max(best, inside);
    }
    return best;
}

/// True when no two vertices of `set` (by vertex id) are adjacent.
inline bool is_independent(const Graph& g, std::span<const Vertex> set)
{
    std::vector<char> member(g.vertex_count(), 0);
    for (Vertex v : set) {
        member[v] = 1;
    }
    for (Vertex v : set) {
        for (Vertex u : g.neighbors(v)) {
            if (member[u] != 0) {
                return false;
            }
        }
    }
    return true;
}

} // namespace tfcolor
