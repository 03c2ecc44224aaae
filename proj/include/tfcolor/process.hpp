#pragma once

// The randomized weight process and its coupled "modified" process.
//
// Process w: every vertex starts with a positive weight w0(v). At step i the
// vertex v_i at position i is put into I with probability 1 - e^{-w(v_i)}, in
// which case every right neighbour gets weight 0; otherwise every right
// neighbour has its weight multiplied by e^{w(v_i)}. The set I is independent.
//
// Modified process w~ for a target position k: steps 0..k-1 only; steps at
// left neighbours of the target always take the multiply branch, all other
// steps follow the rule above. X is the sum of the final w~ weights over the
// target's left neighbours, and the target ends with weight w0(v_k) e^X.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfcolor/graph.hpp"
#include "tfcolor/weight.hpp"

namespace tfcolor {

/// Callable producing uniform doubles in [0, 1).
template <class U>
concept UniformSourceFn = requires(U& u) {
    { u() } -> std::convertible_to<double>;
};

enum class Choice : std::uint8_t { include = 1, boost = 2 };

/// Initial weights must be finite and strictly positive; indexed by vertex id.
inline void validate_initial_weights(const Graph& g, std::span<const double> w0)
{
    if (w0.size() != g.vertex_count()) {
        throw std::invalid_argument("expected " + std::to_string(g.vertex_count()) +
                                    " initial weights, got " + std::to_string(w0.size()));
    }
    for (std::size_t v = 0; v < w0.size(); ++v) {
        if (!(w0[v] > 0.0) || !std::isfinite(w0[v])) {
            throw std::invalid_argument("initial weight of vertex " + std::to_string(v + 1) +
                                        " must be finite and positive, got " + std::to_string(w0[v]));
        }
    }
}

inline std::vector<Weight> initial_weights_by_position(const OrderedGraph& og, std::span<const double> w0)
{
    validate_initial_weights(og.graph(), w0);
    std::vector<Weight> w(og.size());
    for (std::size_t p = 0; p < og.size(); ++p) {
        w[p] = Weight::from_value(w0[og.vertex_at(p)]);
    }
    return w;
}

struct SampleOutcome {
    std::vector<Vertex> independent_set;  ///< ascending vertex ids
    std::vector<Choice> choices;          ///< indexed by step (position)
    std::vector<Weight> final_weights;    ///< indexed by vertex id
};

/// Reusable workspace for repeated runs of process w on one ordered graph.
///
/// The run is evaluated in pull form: a vertex's weight only changes at the
/// steps of its left neighbours, so at its own step it equals zero if some
/// left neighbour joined I, and otherwise w0 times e to the sum of the left
/// neighbours' step weights. Left neighbours are scanned in step order, so the
/// log-domain sum matches the push-form update sequence bit for bit.
class Sampler {
public:
    Sampler(const OrderedGraph& og, std::span<const double> w0)
        : og_(&og), log_w0_(og.size()), log_weight_(og.size()), weight_(og.size()), in_set_(og.size())
    {
        validate_initial_weights(og.graph(), w0);
        for (std::size_t p = 0; p < og.size(); ++p) {
            log_w0_[p] = std::log(w0[og.vertex_at(p)]);
        }
    }

    /// One run; consumes exactly one uniform per step, in step order.
    template <UniformSourceFn U>
    void run(U& uniform)
    {
        const std::size_t n = og_->size();
        constexpr double zero_log = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            double log_w = log_w0_[i];
            for (std::size_t p : og_->left_positions(i)) {
                if (in_set_[p] != 0) {
                    log_w = zero_log;
                    break;
                }
                log_w += weight_[p];
            }
            const double u = static_cast<double>(uniform());
            const double w = std::exp(log_w);
            log_weight_[i] = log_w;
            weight_[i] = w;
            in_set_[i] = u < -std::expm1(-w) ? 1 : 0;
        }
    }

    bool in_set_at(std::size_t position) const { return in_set_[position] != 0; }
    std::span<const std::uint8_t> membership_by_position() const { return in_set_; }
    Weight weight_at(std::size_t position) const { return Weight::from_log(log_weight_[position]); }
    const OrderedGraph& ordered_graph() const { return *og_; }

    SampleOutcome outcome() const
    {
        const std::size_t n = og_->size();
        SampleOutcome out;
        out.choices.resize(n);
        out.final_weights.resize(n);
        for (std::size_t p = 0; p < n; ++p) {
            const Vertex v = og_->vertex_at(p);
            out.choices[p] = in_set_[p] != 0 ? Choice::include : Choice::boost;
            out.final_weights[v] = weight_at(p);
            if (in_set_[p] != 0) {
                out.independent_set.push_back(v);
            }
        }
        std::sort(out.independent_set.begin(), out.independent_set.end());
        return out;
    }

private:
    const OrderedGraph* og_;
    std::vector<double> log_w0_;
    std::vector<double> log_weight_;
    std::vector<double> weight_;
    std::vector<std::uint8_t> in_set_;
};

/// One run of process w with initial weights `w0` (by vertex id).
template <UniformSourceFn U>
SampleOutcome run_process(const OrderedGraph& og, std::span<const double> w0, U&& uniform)
{
    Sampler sampler(og, w0);
    sampler.run(uniform);
    return sampler.outcome();
}

struct RandomizedStep {
    std::size_t position;
    Choice choice;
};

struct ModifiedOutcome {
    double x = 0.0;                        ///< sum of final weights over N_L(target); may be +inf
    std::vector<Weight> final_weights;     ///< w~_{k-1}, indexed by vertex id
    std::vector<RandomizedStep> choices;   ///< randomized steps only
};

/// Runs steps 0..target_position-1 of the modified process. Uniforms are
/// drawn only at randomized steps.
template <UniformSourceFn U>
ModifiedOutcome run_modified_process(const OrderedGraph& og, std::span<const double> w0,
                                     std::size_t target_position, U&& uniform)
{
    if (target_position >= og.size()) {
        throw std::invalid_argument("target position " + std::to_string(target_position + 1) +
                                    " outside 1.." + std::to_string(og.size()));
    }
    std::vector<Weight> w = initial_weights_by_position(og, w0);
    ModifiedOutcome out;
    for (std::size_t i = 0; i < target_position; ++i) {
        const bool forced = og.is_left_neighbor(target_position, i);
        bool include = false;
        if (!forced) {
            const double u = static_cast<double>(uniform());
            include = u < w[i].inclusion_probability();
            out.choices.push_back({i, include ? Choice::include : Choice::boost});
        }
        const double amount = w[i].value();
        for (std::size_t j : og.right_positions(i)) {
            if (include) {
                w[j].set_zero();
            } else {
                w[j].boost(amount);
            }
        }
    }
    for (std::size_t p : og.left_positions(target_position)) {
        out.x += w[p].value();
    }
    out.final_weights.resize(og.size());
    for (std::size_t p = 0; p < og.size(); ++p) {
        out.final_weights[og.vertex_at(p)] = w[p];
    }
    return out;
}

/// (1 - e^{-w0k e^X}) e^{-X}: the target's inclusion probability integrand.
/// Tends to 0 as X -> inf; equals 1 - e^{-w0k} at X = 0.
inline double inclusion_integrand(double w0k, double x)
{
    if (std::isinf(x)) {
        return 0.0;
    }
    const double boosted = w0k * std::exp(x);
    return -std::expm1(-boosted) * std::exp(-x);
}

} // namespace tfcolor
