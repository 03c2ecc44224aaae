#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>

#include "tfcolor/estimator.hpp"
#include "tfcolor/exact.hpp"
#include "tfcolor/generators.hpp"

using namespace tfcolor;

TEST(Wilson, ContainsPointEstimateAndStaysInUnitInterval)
{
    for (std::uint64_t n : {1u, 2u, 10u, 1000u}) {
        for (std::uint64_t h = 0; h <= n; h += std::max<std::uint64_t>(1, n / 7)) {
            const auto ci = wilson_interval(h, n);
            const double p = double(h) / double(n);
            EXPECT_LE(ci.low, p);
            EXPECT_GE(ci.high, p);
            EXPECT_GE(ci.low, 0.0);
            EXPECT_LE(ci.high, 1.0);
        }
    }
    EXPECT_EQ(wilson_interval(0, 100).low, 0.0);
    EXPECT_EQ(wilson_interval(100, 100).high, 1.0);
    // textbook value: 50/100 -> [0.4038, 0.5962]
    EXPECT_NEAR(wilson_interval(50, 100).low, 0.40383, 1e-5);
    EXPECT_NEAR(wilson_interval(50, 100).high, 0.59617, 1e-5);
}

TEST(Estimate, SingleVertexLnTwo)
{
    const auto report =
        estimate_inclusion(natural_order(Graph(1)), std::vector<double>{std::log(2.0)}, 1'000'000, 5);
    EXPECT_NEAR(report.per_vertex[0].estimate, 0.5, 0.002);
    EXPECT_EQ(report.samples, 1'000'000u);
    EXPECT_EQ(report.seed, 5u);
}

TEST(Estimate, EdgeMatchesExact)
{
    const double ln2 = std::log(2.0);
    const auto og = natural_order(gen::path(2));
    const std::vector<double> w0{ln2, ln2};
    const std::uint64_t samples = 1'000'000;
    const auto report = estimate_inclusion(og, w0, samples, 6);
    EXPECT_NEAR(report.per_vertex[1].estimate, 0.375, 4 * standard_error(0.375, samples));
}

TEST(Estimate, IndependentOfJobCount)
{
    const auto og = degeneracy_order(gen::petersen()).ordered;
    const std::vector<double> w0(10, 0.25);
    const auto serial = estimate_inclusion(og, w0, 20011, 99, 1);
    for (unsigned jobs : {2u, 3u, 8u}) {
        const auto parallel = estimate_inclusion(og, w0, 20011, 99, jobs);
        for (Vertex v = 0; v < 10; ++v) {
            EXPECT_EQ(parallel.per_vertex[v].hits, serial.per_vertex[v].hits);
            EXPECT_EQ(parallel.per_vertex[v].estimate, serial.per_vertex[v].estimate);
            EXPECT_EQ(parallel.per_vertex[v].ci_low, serial.per_vertex[v].ci_low);
            EXPECT_EQ(parallel.per_vertex[v].ci_high, serial.per_vertex[v].ci_high);
        }
    }
    const auto other = estimate_inclusion(og, w0, 20011, 100, 1);
    bool differs = false;
    for (Vertex v = 0; v < 10; ++v) {
        differs = differs || other.per_vertex[v].hits != serial.per_vertex[v].hits;
    }
    EXPECT_TRUE(differs);
}

TEST(Estimate, ReportInvariants)
{
    const auto og = natural_order(gen::cycle(7));
    const std::vector<double> w0(7, 0.4);
    const auto report = estimate_inclusion(og, w0, 5000, 3);
    for (const auto& e : report.per_vertex) {
        EXPECT_EQ(e.estimate, double(e.hits) / 5000.0);
        EXPECT_LE(e.ci_low, e.estimate);
        EXPECT_GE(e.ci_high, e.estimate);
    }
}

TEST(Estimate, SingleSample)
{
    const auto og = natural_order(gen::path(3));
    const auto report = estimate_inclusion(og, std::vector<double>{0.5, 0.5, 0.5}, 1, 8);
    for (const auto& e : report.per_vertex) {
        EXPECT_TRUE(e.estimate == 0.0 || e.estimate == 1.0);
        EXPECT_LE(e.ci_low, e.estimate);
        EXPECT_GE(e.ci_high, e.estimate);
        EXPECT_LT(e.ci_high - e.ci_low, 1.0);
        EXPECT_GT(e.ci_high - e.ci_low, 0.5);
    }
}

TEST(Estimate, RejectsBadInput)
{
    const auto og = natural_order(gen::path(2));
    EXPECT_THROW(estimate_inclusion(og, std::vector<double>{0.1, 0.1}, 0, 1), std::invalid_argument);
    EXPECT_THROW(estimate_inclusion(og, std::vector<double>{0.1, -0.1}, 10, 1), std::invalid_argument);
}

TEST(Estimate, WilsonCoverageOnEdge)
{
    const double ln2 = std::log(2.0);
    const auto og = natural_order(gen::path(2));
    const std::vector<double> w0{ln2, ln2};
    int covered = 0;
    for (std::uint64_t rep = 0; rep < 200; ++rep) {
        const auto e = estimate_inclusion(og, w0, 2000, 1000 + rep, 1).per_vertex[1];
        covered += (e.ci_low <= 0.375 && 0.375 <= e.ci_high) ? 1 : 0;
    }
    EXPECT_GE(covered, 180);
}

TEST(Estimate, C5SymmetricEstimatesAgreeWithExact)
{
    const auto og = natural_order(gen::cycle(5));
    const std::vector<double> w0(5, 0.2);
    const auto exact = exact_inclusion(og, w0);
    const std::uint64_t samples = 400'000;
    const auto report = estimate_inclusion(og, w0, samples, 12);
    for (Vertex v = 0; v < 5; ++v) {
        const double p = exact.per_vertex_inclusion[v];
        EXPECT_NEAR(report.per_vertex[v].estimate, p, 4 * standard_error(p, samples));
    }
}

TEST(MinInclusion, TieBreakAndZeroHits)
{
    EstimateReport uniform;
    uniform.samples = 10;
    uniform.per_vertex.assign(4, VertexEstimate{0.5, 0.2, 0.8, 5});
    EXPECT_EQ(empirical_min_inclusion(uniform).vertex, 0u);

    auto with_zero = uniform;
    with_zero.per_vertex[2] = {0.0, 0.0, 0.27, 0};
    const auto m = empirical_min_inclusion(with_zero);
    EXPECT_EQ(m.vertex, 2u);
    EXPECT_EQ(m.ci_low, 0.0);

    EXPECT_THROW(empirical_min_inclusion(EstimateReport{}), std::invalid_argument);
}

TEST(DefaultJobs, ReadsEnvironment)
{
    ::setenv("TFCOLOR_JOBS", "3", 1);
    EXPECT_EQ(default_jobs(), 3u);
    ::setenv("TFCOLOR_JOBS", "junk", 1);
    EXPECT_GE(default_jobs(), 1u);
    ::unsetenv("TFCOLOR_JOBS");
}
