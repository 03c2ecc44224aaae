#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace tfcolor;
using namespace tfcolor::testing;

TEST(Corpus, ClassCountsMatchKnownSequences)
{
    const auto levels = triangle_free_classes(8);
    const std::vector<std::size_t> all{0, 1, 2, 3, 7, 14, 38, 107, 410};
    const std::vector<std::size_t> conn{0, 1, 1, 1, 3, 6, 19, 59, 267};
    for (std::size_t n = 1; n <= 8; ++n) {
        EXPECT_EQ(levels[n].size(), all[n]) << n;
        const auto c = std::count_if(levels[n].begin(), levels[n].end(),
                                     [n](std::uint64_t code) { return connected(decode(n, code)); });
        EXPECT_EQ(static_cast<std::size_t>(c), conn[n]) << n;
    }
    EXPECT_EQ(triangle_free_corpus().size(), 357u + 2u);
}

TEST(Corpus, MembersAreTriangleFreeAndConnected)
{
    for (const auto& entry : triangle_free_corpus()) {
        EXPECT_TRUE(brute_force_triangle_free(entry.graph)) << entry.name;
        Masks adj(entry.graph.vertex_count(), 0);
        for (auto [u, v] : entry.graph.edges()) {
            adj[u] |= 1u << v;
            adj[v] |= 1u << u;
        }
        EXPECT_TRUE(connected(adj)) << entry.name;
    }
}

TEST(Corpus, CanonicalCodeIsRelabellingInvariant)
{
    std::mt19937_64 rng(61);
    const auto levels = triangle_free_classes(7);
    for (std::uint64_t code : levels[7]) {
        const Masks adj = decode(7, code);
        std::vector<std::size_t> perm(7);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Masks relabelled(7, 0);
        for (std::size_t u = 0; u < 7; ++u) {
            for (std::size_t v = 0; v < 7; ++v) {
                if (adj[u] >> v & 1u) {
                    relabelled[perm[u]] |= 1u << perm[v];
                }
            }
        }
        EXPECT_EQ(canonical_code(relabelled), code);
    }
}
