#pragma once

// Seeded Monte Carlo estimates of per-vertex inclusion probabilities.
//
// Replica r draws its uniforms from SplitMix64(replica_seed(seed, r)), so the
// hit counts (an order-independent integer sum) do not depend on how replicas
// are spread over worker threads.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "tfcolor/graph.hpp"
#include "tfcolor/process.hpp"
#include "tfcolor/rng.hpp"

namespace tfcolor {

inline constexpr double wilson_z95 = 1.959963984540054;

struct Interval {
    double low;
    double high;
};

/// Wilson score interval for `hits` successes out of `trials`.
inline Interval wilson_interval(std::uint64_t hits, std::uint64_t trials, double z = wilson_z95)
{
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(hits) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return {std::clamp(std::min(centre - half, p), 0.0, 1.0), std::clamp(std::max(centre + half, p), 0.0, 1.0)};
}

inline double standard_error(double p, std::uint64_t trials)
{
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

struct VertexEstimate {
    double estimate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t hits = 0;
};

struct EstimateReport {
    std::vector<VertexEstimate> per_vertex;  ///< indexed by vertex id
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::chrono::duration<double> wall_time{};
};

/// Worker count from TFCOLOR_JOBS, else the hardware concurrency.
inline unsigned default_jobs()
{
    if (const char* env = std::getenv("TFCOLOR_JOBS"); env != nullptr) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) {
            return static_cast<unsigned>(v);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

class IndependenceViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

namespace detail {

inline void count_replicas(const OrderedGraph& og, std::span<const double> w0, std::uint64_t seed,
                           std::uint64_t begin, std::uint64_t end, std::vector<std::uint64_t>& hits)
{
    Sampler sampler(og, w0);
    const std::size_t n = og.size();
    for (std::uint64_t r = begin; r < end; ++r) {
        UniformSource<SplitMix64> uniform(SplitMix64(replica_seed(seed, r)));
        sampler.run(uniform);
        const auto member = sampler.membership_by_position();
        for (std::size_t p = 0; p < n; ++p) {
            if (member[p] == 0) {
                continue;
            }
            for (std::size_t q : og.left_positions(p)) {
                if (member[q] != 0) {
                    throw IndependenceViolation("replica " + std::to_string(r) + " produced adjacent vertices " +
                                                std::to_string(og.vertex_at(q) + 1) + " and " +
                                                std::to_string(og.vertex_at(p) + 1));
                }
            }
            ++hits[p];
        }
    }
}

} // namespace detail

/// Runs `samples` independent copies of the process and reports per-vertex
/// frequencies with Wilson 95% intervals. The result is a function of
/// (og, w0, samples, seed) only; `jobs` changes scheduling, not output.
inline EstimateReport estimate_inclusion(const OrderedGraph& og, std::span<const double> w0, std::uint64_t samples,
                                         std::uint64_t seed, unsigned jobs = 0)
{
    if (samples == 0) {
        throw std::invalid_argument("need at least one sample");
    }
    validate_initial_weights(og.graph(), w0);
    const auto start = std::chrono::steady_clock::now();
    if (jobs == 0) {
        jobs = default_jobs();
    }
    jobs = static_cast<unsigned>(std::min<std::uint64_t>(jobs, samples));
    const std::size_t n = og.size();

    std::vector<std::vector<std::uint64_t>> partial(jobs, std::vector<std::uint64_t>(n, 0));
    std::vector<std::exception_ptr> failures(jobs);
    auto chunk = [&](unsigned w) {
        const std::uint64_t begin = samples * w / jobs;
        const std::uint64_t end = samples * (w + 1) / jobs;
        try {
            detail::count_replicas(og, w0, seed, begin, end, partial[w]);
        } catch (...) {
            failures[w] = std::current_exception();
        }
    };
    if (jobs == 1) {
        chunk(0);
    } else {
        std::vector<std::jthread> workers;
        workers.reserve(jobs);
        for (unsigned w = 0; w < jobs; ++w) {
            workers.emplace_back(chunk, w);
        }
    }
    for (const auto& f : failures) {
        if (f) {
            std::rethrow_exception(f);
        }
    }

    EstimateReport report;
    report.samples = samples;
    report.seed = seed;
    report.per_vertex.resize(n);
    for (std::size_t p = 0; p < n; ++p) {
        std::uint64_t hits = 0;
        for (const auto& part : partial) {
            hits += part[p];
        }
        const Interval ci = wilson_interval(hits, samples);
        report.per_vertex[og.vertex_at(p)] = {static_cast<double>(hits) / static_cast<double>(samples), ci.low,
                                              ci.high, hits};
    }
    report.wall_time = std::chrono::steady_clock::now() - start;
    return report;
}

struct MinInclusion {
    Vertex vertex;
    double estimate;
    double ci_low;
};

/// Vertex with the smallest estimate (lowest id among ties).
inline MinInclusion empirical_min_inclusion(const EstimateReport& report)
{
    if (report.per_vertex.empty()) {
        throw std::invalid_argument("empty estimate report");
    }
    Vertex best = 0;
    for (Vertex v = 1; v < report.per_vertex.size(); ++v) {
        if (report.per_vertex[v].estimate < report.per_vertex[best].estimate) {
            best = v;
        }
    }
    return {best, report.per_vertex[best].estimate, report.per_vertex[best].ci_low};
}

} // namespace tfcolor
