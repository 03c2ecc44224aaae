#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "tfcolor/graph.hpp"

namespace tfcolor {

struct IndependentSetFamily {
    std::vector<std::vector<Vertex>> sets;  ///< each ascending; family in discovery order
    bool maximal_only = true;
};

class EnumerationCapExceeded : public std::runtime_error {
public:
    EnumerationCapExceeded(std::size_t cap, std::size_t found)
        : std::runtime_error("more than " + std::to_string(cap) + " maximal independent sets (stopped after " +
                             std::to_string(found) + ")"),
          found_(found)
    {
    }
    std::size_t partial_count() const noexcept { return found_; }

private:
    std::size_t found_;
};

/// All maximal independent sets of `g`, i.e. the maximal cliques of its
/// complement, by Bron–Kerbosch with Tomita pivoting. Throws once more than
/// `cap` sets have been found.
inline IndependentSetFamily enumerate_maximal_independent_sets(const Graph& g, std::size_t cap = 1'000'000)
{
    using Bits = boost::dynamic_bitset<>;
    const std::size_t n = g.vertex_count();
    IndependentSetFamily family;
    if (n == 0) {
        family.sets.emplace_back();
        return family;
    }
    // non-neighbourhoods (complement adjacency)
    std::vector<Bits> free(n, Bits(n));
    for (std::size_t v = 0; v < n; ++v) {
        free[v].set();
        free[v].reset(v);
        for (Vertex u : g.neighbors(static_cast<Vertex>(v))) {
            free[v].reset(u);
        }
    }

    std::vector<Vertex> current;
    auto expand = [&](auto&& self, Bits candidates, Bits excluded) -> void {
        if (candidates.none() && excluded.none()) {
            if (family.sets.size() == cap) {
                throw EnumerationCapExceeded(cap, family.sets.size() + 1);
            }
            std::vector<Vertex> set = current;
            std::sort(set.begin(), set.end());
            family.sets.push_back(std::move(set));
            return;
        }
        // pivot maximising |candidates ∩ free(u)|
        const Bits pool = candidates | excluded;
        std::size_t pivot = Bits::npos;
        std::size_t best = 0;
        for (std::size_t u = pool.find_first(); u != Bits::npos; u = pool.find_next(u)) {
            const std::size_t c = (candidates & free[u]).count();
            if (pivot == Bits::npos || c > best) {
                pivot = u;
                best = c;
            }
        }
        Bits branch = candidates - free[pivot];
        for (std::size_t v = branch.find_first(); v != Bits::npos; v = branch.find_next(v)) {
            current.push_back(static_cast<Vertex>(v));
            self(self, candidates & free[v], excluded & free[v]);
            current.pop_back();
            candidates.reset(v);
            excluded.set(v);
        }
    };
    Bits all(n);
    all.set();
    expand(expand, all, Bits(n));
    return family;
}

/// Size of a largest independent set.
inline std::size_t independence_number(const Graph& g)
{
    std::size_t best = 0;
    for (const auto& s : enumerate_maximal_independent_sets(g).sets) {
        best = std::max(best, s.size());
    }
    return best;
}

} // namespace tfcolor
