#include <gtest/gtest.h>

#include <random>

#include "support/oracles.hpp"
#include "tfcolor/frac_chrom.hpp"
#include "tfcolor/generators.hpp"
#include "tfcolor/graph.hpp"

using namespace tfcolor;
using tfcolor::testing::brute_force_triangle_free;

TEST(Generators, FixedFamilies)
{
    const Graph c5 = gen::cycle(5);
    EXPECT_EQ(c5.edge_count(), 5u);
    EXPECT_TRUE(is_triangle_free(c5));
    EXPECT_THROW(gen::cycle(2), std::invalid_argument);

    EXPECT_EQ(degeneracy_order(gen::complete_bipartite(3, 3)).degeneracy, 3u);

    const Graph p = gen::petersen();
    EXPECT_EQ(p.edge_count(), 15u);
    for (Vertex v = 0; v < 10; ++v) {
        EXPECT_EQ(p.degree(v), 3u);
    }
    EXPECT_TRUE(brute_force_triangle_free(p));

    EXPECT_EQ(gen::path(1).edge_count(), 0u);
    EXPECT_EQ(gen::path(4).edge_count(), 3u);
    EXPECT_EQ(gen::complete(5).edge_count(), 10u);
}

TEST(Mycielski, SizesAndSmallCases)
{
    const Graph c5 = gen::mycielski(gen::complete(2));
    EXPECT_EQ(c5.vertex_count(), 5u);
    EXPECT_EQ(c5.edge_count(), 5u);
    for (Vertex v = 0; v < 5; ++v) {
        EXPECT_EQ(c5.degree(v), 2u);
    }
    EXPECT_EQ(degeneracy_order(c5).degeneracy, 2u);  // 2-regular with 5 edges on 5 vertices: one 5-cycle

    const Graph grotzsch = gen::grotzsch();
    EXPECT_EQ(grotzsch.vertex_count(), 11u);
    EXPECT_EQ(grotzsch.edge_count(), 20u);
    EXPECT_TRUE(brute_force_triangle_free(grotzsch));

    const Graph apex = gen::mycielski(gen::edgeless(3));
    EXPECT_EQ(apex.vertex_count(), 7u);
    EXPECT_EQ(apex.edge_count(), 3u);
    for (Vertex v = 0; v < 3; ++v) {
        EXPECT_EQ(apex.degree(v), 0u);
        EXPECT_TRUE(apex.has_edge(3 + v, 6));
    }
}

TEST(Mycielski, PreservesTriangleFreenessAndContainsOriginal)
{
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Graph g = gen::random_triangle_free(9, 12, seed).graph;
        const Graph m = gen::mycielski(g);
        EXPECT_EQ(m.vertex_count(), 2 * g.vertex_count() + 1);
        EXPECT_EQ(m.edge_count(), 3 * g.edge_count() + g.vertex_count());
        EXPECT_TRUE(brute_force_triangle_free(m));
        for (Vertex u = 0; u < g.vertex_count(); ++u) {
            for (Vertex v = 0; v < g.vertex_count(); ++v) {
                EXPECT_EQ(m.has_edge(u, v), g.has_edge(u, v));
            }
        }
    }
}

TEST(Mycielski, FractionalRecurrence)
{
    // chi_f(M(G)) = chi_f(G) + 1/chi_f(G)
    for (const Graph& g : {gen::complete(2), gen::cycle(5), gen::path(4)}) {
        const Rational base = fractional_chromatic_number(g).value;
        EXPECT_EQ(fractional_chromatic_number(gen::mycielski(g)).value, base + 1 / base);
    }
}

TEST(RandomBipartite, FullProbabilityAndDeterminism)
{
    EXPECT_EQ(gen::random_bipartite(3, 3, 1.0, 17), gen::complete_bipartite(3, 3));
    EXPECT_EQ(gen::random_bipartite(4, 6, 0.0, 17).edge_count(), 0u);
    EXPECT_EQ(gen::random_bipartite(20, 30, 0.3, 5), gen::random_bipartite(20, 30, 0.3, 5));
    EXPECT_NE(gen::random_bipartite(20, 30, 0.3, 5), gen::random_bipartite(20, 30, 0.3, 6));
    EXPECT_THROW(gen::random_bipartite(2, 2, 1.5, 0), std::invalid_argument);
}

TEST(RandomBipartite, DegeneracyTargetIsHitAndReproducible)
{
    for (std::size_t target : {2u, 5u, 9u}) {
        const auto r = gen::random_bipartite_with_degeneracy(60, 60, target, 31);
        EXPECT_EQ(r.degeneracy, target);
        EXPECT_EQ(degeneracy_order(r.graph).degeneracy, target);
        EXPECT_EQ(gen::random_bipartite(60, 60, r.edge_prob, 31), r.graph);
    }
    EXPECT_THROW(gen::random_bipartite_with_degeneracy(4, 4, 5, 1), std::invalid_argument);
}

TEST(RandomTriangleFree, AlwaysTriangleFreeAndDeterministic)
{
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng() % 20;
        const std::size_t m = rng() % (n * n / 4 + 2);
        const std::uint64_t seed = rng();
        const auto r = gen::random_triangle_free(n, m, seed);
        EXPECT_TRUE(is_triangle_free(r.graph));
        EXPECT_LE(r.graph.edge_count(), m);
        EXPECT_LE(r.attempts, 100 * n * n);
        EXPECT_EQ(gen::random_triangle_free(n, m, seed).graph, r.graph);
    }
}

TEST(RandomTriangleFree, ReportsShortfall)
{
    // a triangle-free graph on 6 vertices has at most 9 edges
    const auto r = gen::random_triangle_free(6, 20, 3);
    EXPECT_FALSE(r.reached_target());
    EXPECT_LE(r.graph.edge_count(), 9u);
    EXPECT_EQ(r.attempts, 100u * 36u);
}
