#pragma once

// Exact expectations over the weight processes by depth-first enumeration of
// the binary choice tree. Branch 1 (include) is explored before branch 2
// (boost); zero-probability branches are pruned. Weights are mutated in place
// and restored on the way back up.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tfcolor/graph.hpp"
#include "tfcolor/process.hpp"
#include "tfcolor/weight.hpp"

namespace tfcolor {

/// Maximum number of enumerated (randomized) steps; 2^steps bounds the path count.
struct EnumerationBudget {
    std::size_t max_steps = 20;
};

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(std::size_t required_steps, std::size_t max_steps)
        : std::runtime_error("exact enumeration over " + std::to_string(required_steps) +
                             " randomized steps needs up to 2^" + std::to_string(required_steps) +
                             " paths; budget is 2^" + std::to_string(max_steps) +
                             " (raise the step limit to at least " + std::to_string(required_steps) + ")"),
          required_steps_(required_steps)
    {
    }
    std::size_t required_steps() const noexcept { return required_steps_; }

private:
    std::size_t required_steps_;
};

namespace detail {

inline void check_budget(std::size_t steps, const EnumerationBudget& budget)
{
    if (steps > budget.max_steps) {
        throw BudgetExceeded(steps, budget.max_steps);
    }
}

inline void check_target(const OrderedGraph& og, std::size_t target)
{
    if (target >= og.size()) {
        throw std::invalid_argument("target position " + std::to_string(target + 1) + " outside 1.." +
                                    std::to_string(og.size()));
    }
}

/// Applies one step's update to the right neighbours of `step`, remembering
/// the old weights so the caller can undo it.
class Undo {
public:
    void apply(const OrderedGraph& og, std::vector<Weight>& w, std::size_t step, bool include)
    {
        marks_.push_back(saved_.size());
        const double amount = w[step].value();
        for (std::size_t j : og.right_positions(step)) {
            saved_.emplace_back(j, w[j]);
            if (include) {
                w[j].set_zero();
            } else {
                w[j].boost(amount);
            }
        }
    }

    void undo(std::vector<Weight>& w)
    {
        const std::size_t mark = marks_.back();
        marks_.pop_back();
        while (saved_.size() > mark) {
            w[saved_.back().first] = saved_.back().second;
            saved_.pop_back();
        }
    }

private:
    std::vector<std::pair<std::size_t, Weight>> saved_;
    std::vector<std::size_t> marks_;
};

/// log(1 - e^-w), kept finite for weights too small to exponentiate.
inline double log_inclusion(Weight w)
{
    if (w.log() < -30.0) {
        return w.log();
    }
    return std::log(w.inclusion_probability());
}

} // namespace detail

struct ExactReport {
    /// P(v in I) by vertex id; entries past the truncation step are meaningless (left at 0).
    std::vector<double> per_vertex_inclusion;
    std::uint64_t path_count = 0;
    /// Total probability of the enumerated leaves; 1 up to rounding.
    double probability_mass = 0.0;
    /// Number of steps enumerated when a target was given.
    std::optional<std::size_t> truncation_step;
};

/// Exact P(v in I) under process w, enumerating all steps, or only steps
/// 0..target when `target` (a position) is given.
inline ExactReport exact_inclusion(const OrderedGraph& og, std::span<const double> w0,
                                   std::optional<std::size_t> target = std::nullopt,
                                   const EnumerationBudget& budget = {})
{
    std::size_t steps = og.size();
    if (target) {
        detail::check_target(og, *target);
        steps = *target + 1;
    }
    detail::check_budget(steps, budget);
    std::vector<Weight> w = initial_weights_by_position(og, w0);
    std::vector<double> by_position(og.size(), 0.0);
    ExactReport report;
    detail::Undo undo;

    auto dfs = [&](auto&& self, std::size_t step, double prob) -> void {
        if (step == steps) {
            report.probability_mass += prob;
            ++report.path_count;
            return;
        }
        const double p_in = w[step].inclusion_probability();
        const double p_out = w[step].survival_probability();
        if (p_in > 0.0) {
            by_position[step] += prob * p_in;
            undo.apply(og, w, step, true);
            self(self, step + 1, prob * p_in);
            undo.undo(w);
        }
        if (p_out > 0.0) {
            undo.apply(og, w, step, false);
            self(self, step + 1, prob * p_out);
            undo.undo(w);
        }
    };
    dfs(dfs, 0, 1.0);

    report.per_vertex_inclusion.assign(og.size(), 0.0);
    for (std::size_t p = 0; p < steps; ++p) {
        report.per_vertex_inclusion[og.vertex_at(p)] = by_position[p];
    }
    if (target) {
        report.truncation_step = steps;
    }
    return report;
}

/// E[f(w_{k-1}(v_k))] under process w, k = target position. Requires f(0) = 0.
template <class F>
double exact_expectation_main(const OrderedGraph& og, std::span<const double> w0, std::size_t target, F&& f,
                              const EnumerationBudget& budget = {})
{
    detail::check_target(og, target);
    detail::check_budget(target, budget);
    if (std::invoke(f, 0.0) != 0.0) {
        throw std::invalid_argument("f must satisfy f(0) = 0");
    }
    std::vector<Weight> w = initial_weights_by_position(og, w0);
    detail::Undo undo;
    double total = 0.0;

    auto dfs = [&](auto&& self, std::size_t step, double prob) -> void {
        if (step == target) {
            total += prob * std::invoke(f, w[target].value());
            return;
        }
        const double p_in = w[step].inclusion_probability();
        const double p_out = w[step].survival_probability();
        if (p_in > 0.0) {
            undo.apply(og, w, step, true);
            self(self, step + 1, prob * p_in);
            undo.undo(w);
        }
        if (p_out > 0.0) {
            undo.apply(og, w, step, false);
            self(self, step + 1, prob * p_out);
            undo.undo(w);
        }
    };
    dfs(dfs, 0, 1.0);
    return total;
}

/// One leaf of the modified-process tree: its probability, the final weights
/// w~_{k-1} by position, and X.
struct ModifiedLeaf {
    double probability;
    double log_probability;
    std::span<const Weight> weights_by_position;
    double x;
};

/// Visits every positive-probability leaf of the modified process for target
/// position k. Only steps outside N_L(v_k) branch; the others boost.
template <class Visitor>
void for_each_modified_leaf(const OrderedGraph& og, std::span<const double> w0, std::size_t target,
                            Visitor&& visit, const EnumerationBudget& budget = {})
{
    detail::check_target(og, target);
    const auto left = og.left_positions(target);
    detail::check_budget(target - left.size(), budget);
    std::vector<Weight> w = initial_weights_by_position(og, w0);
    detail::Undo undo;

    // Probabilities are carried as logs: a boost by e^w after a survival of
    // probability e^-w must not be lost to underflow.
    auto dfs = [&](auto&& self, std::size_t step, double log_prob) -> void {
        if (step == target) {
            double x = 0.0;
            for (std::size_t p : left) {
                x += w[p].value();
            }
            visit(ModifiedLeaf{std::exp(log_prob), log_prob, w, x});
            return;
        }
        if (std::binary_search(left.begin(), left.end(), step)) {
            undo.apply(og, w, step, false);
            self(self, step + 1, log_prob);
            undo.undo(w);
            return;
        }
        const double log_in = detail::log_inclusion(w[step]);
        const double log_out = -w[step].value();
        if (log_in > -std::numeric_limits<double>::infinity()) {
            undo.apply(og, w, step, true);
            self(self, step + 1, log_prob + log_in);
            undo.undo(w);
        }
        if (log_out > -std::numeric_limits<double>::infinity()) {
            undo.apply(og, w, step, false);
            self(self, step + 1, log_prob + log_out);
            undo.undo(w);
        }
    };
    dfs(dfs, 0, 0.0);
}

/// E[g(w~_{k-1}(v_k), X)] under the modified process.
template <class G>
double exact_expectation_modified(const OrderedGraph& og, std::span<const double> w0, std::size_t target,
                                  G&& g, const EnumerationBudget& budget = {})
{
    double total = 0.0;
    for_each_modified_leaf(
        og, w0, target,
        [&](const ModifiedLeaf& leaf) {
            total += leaf.probability * std::invoke(g, leaf.weights_by_position[target].value(), leaf.x);
        },
        budget);
    return total;
}

struct IdentityCheck {
    double lhs;
    double rhs;
    double deviation;
};

/// E[f(w_{k-1}(v_k))] against E[f(w~_{k-1}(v_k)) e^{-X}] with f(x) = 1 - e^{-x}.
inline IdentityCheck verify_claim_procrel(const OrderedGraph& og, std::span<const double> w0, std::size_t target,
                                          const EnumerationBudget& budget = {})
{
    auto f = [](double x) { return -std::expm1(-x); };
    const double lhs = exact_expectation_main(og, w0, target, f, budget);
    const double rhs = exact_expectation_modified(
        og, w0, target, [&](double wk, double x) { return std::isinf(x) ? 0.0 : f(wk) * std::exp(-x); },
        budget);
    return {lhs, rhs, std::abs(lhs - rhs)};
}

/// max over every prefix length t (0 up to the target position) and every
/// left neighbour v_i of the target of |E[w~_t(v_i)] - w0(v_i)|.
/// Requires a triangle-free graph.
inline double verify_claim_martingale(const OrderedGraph& og, std::span<const double> w0, std::size_t target,
                                      const EnumerationBudget& budget = {})
{
    detail::check_target(og, target);
    if (auto t = find_triangle(og.graph())) {
        throw std::domain_error("martingale property requires a triangle-free graph; found triangle (" +
                                std::to_string(t->a + 1) + "," + std::to_string(t->b + 1) + "," +
                                std::to_string(t->c + 1) + ")");
    }
    const auto left = og.left_positions(target);
    detail::check_budget(target - left.size(), budget);
    std::vector<Weight> w = initial_weights_by_position(og, w0);
    const std::vector<Weight> initial = w;
    // expectation[t][j]: E[w~_t] of the j-th left neighbour
    std::vector<std::vector<double>> expectation(target + 1, std::vector<double>(left.size(), 0.0));
    detail::Undo undo;

    auto dfs = [&](auto&& self, std::size_t step, double log_prob) -> void {
        for (std::size_t j = 0; j < left.size(); ++j) {
            expectation[step][j] += std::exp(log_prob + w[left[j]].log());
        }
        if (step == target) {
            return;
        }
        if (std::binary_search(left.begin(), left.end(), step)) {
            undo.apply(og, w, step, false);
            self(self, step + 1, log_prob);
            undo.undo(w);
            return;
        }
        const double log_in = detail::log_inclusion(w[step]);
        const double log_out = -w[step].value();
        if (log_in > -std::numeric_limits<double>::infinity()) {
            undo.apply(og, w, step, true);
            self(self, step + 1, log_prob + log_in);
            undo.undo(w);
        }
        if (log_out > -std::numeric_limits<double>::infinity()) {
            undo.apply(og, w, step, false);
            self(self, step + 1, log_prob + log_out);
            undo.undo(w);
        }
    };
    dfs(dfs, 0, 0.0);

    double worst = 0.0;
    for (std::size_t t = 0; t <= target; ++t) {
        for (std::size_t j = 0; j < left.size(); ++j) {
            worst = std::max(worst, std::abs(expectation[t][j] - initial[left[j]].value()));
        }
    }
    return worst;
}

/// |E X - sum_{N_L(v_k)} w0(v_i)|.
inline IdentityCheck verify_claim_expected_x(const OrderedGraph& og, std::span<const double> w0,
                                             std::size_t target, const EnumerationBudget& budget = {})
{
    const auto left = og.left_positions(target);
    double lhs = 0.0;
    for_each_modified_leaf(
        og, w0, target,
        [&](const ModifiedLeaf& leaf) {
            for (std::size_t p : left) {
                lhs += std::exp(leaf.log_probability + leaf.weights_by_position[p].log());
            }
        },
        budget);
    double rhs = 0.0;
    for (std::size_t p : og.left_positions(target)) {
        rhs += w0[og.vertex_at(p)];
    }
    return {lhs, rhs, std::abs(lhs - rhs)};
}

/// max over leaves with finite X of |w~_{k-1}(v_k) - w0(v_k) e^X| / (w0(v_k) e^X).
inline double verify_claim_final_weight(const OrderedGraph& og, std::span<const double> w0, std::size_t target,
                                        const EnumerationBudget& budget = {})
{
    const double w0k = w0[og.vertex_at(target)];
    double worst = 0.0;
    for_each_modified_leaf(
        og, w0, target,
        [&](const ModifiedLeaf& leaf) {
            if (std::isinf(leaf.x)) {
                return;
            }
            const double expected = w0k * std::exp(leaf.x);
            const double actual = leaf.weights_by_position[target].value();
            worst = std::max(worst, std::abs(actual - expected) / expected);
        },
        budget);
    return worst;
}

/// Exact P(v_k in I) against E[(1 - e^{-w0(v_k) e^X}) e^{-X}].
inline IdentityCheck verify_claim_inclusion(const OrderedGraph& og, std::span<const double> w0, std::size_t target,
                                            const EnumerationBudget& budget = {})
{
    const double lhs = exact_inclusion(og, w0, target, budget).per_vertex_inclusion[og.vertex_at(target)];
    const double w0k = w0[og.vertex_at(target)];
    const double rhs = exact_expectation_modified(
        og, w0, target, [&](double, double x) { return inclusion_integrand(w0k, x); }, budget);
    return {lhs, rhs, std::abs(lhs - rhs)};
}

} // namespace tfcolor
