#pragma once

// Parameter choices, condition checks and explicit finite-d bounds for the
// inclusion guarantees of the weight process.
//
// Core guarantee: if w0(v_k) exp(2 sum_{N_L(v_k)} w0) <= eps then
//   P(v_k in I) >= (1 - e^{-eps}) / (2 eps) * w0(v_k).

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfcolor/graph.hpp"
#include "tfcolor/process.hpp"

namespace tfcolor {

/// (1 - e^{-eps}) / (2 eps) * w0k.
inline double mainproc_bound(double epsilon, double w0k)
{
    return -std::expm1(-epsilon) / (2.0 * epsilon) * w0k;
}

struct MainprocInstance {
    double epsilon = 0.0;
    Vertex target_vertex = 0;
    std::size_t target_position = 0;
    double condition_lhs = 0.0;  ///< w0(v_k) exp(2 sum_{N_L(v_k)} w0(v_i))
    double bound = 0.0;
    bool valid = false;          ///< condition_lhs <= epsilon
};

/// Evaluates the condition and bound at target position `target`. Violating
/// instances come back flagged, not rejected.
inline MainprocInstance mainproc_check_and_bound(const OrderedGraph& og, std::span<const double> w0,
                                                 std::size_t target, double epsilon)
{
    validate_initial_weights(og.graph(), w0);
    if (target >= og.size()) {
        throw std::invalid_argument("target position out of range");
    }
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("epsilon must be positive");
    }
    MainprocInstance inst;
    inst.epsilon = epsilon;
    inst.target_position = target;
    inst.target_vertex = og.vertex_at(target);
    double left_sum = 0.0;
    for (std::size_t p : og.left_positions(target)) {
        left_sum += w0[og.vertex_at(p)];
    }
    const double w0k = w0[inst.target_vertex];
    inst.condition_lhs = w0k * std::exp(2.0 * left_sum);
    inst.bound = mainproc_bound(epsilon, w0k);
    inst.valid = inst.condition_lhs <= epsilon;
    return inst;
}

/// Uniform starting weight (ln d - 2 ln ln d) / (2d) for degeneracy d >= 3.
inline double degenerate_start_weight(std::size_t d)
{
    const double ld = std::log(static_cast<double>(d));
    return (ld - 2.0 * std::log(ld)) / (2.0 * static_cast<double>(d));
}

/// 1 / (2 ln d).
inline double degenerate_epsilon(std::size_t d) { return 1.0 / (2.0 * std::log(static_cast<double>(d))); }

struct MainDriverReport {
    OrderedGraph ordered;               ///< degeneracy order
    std::size_t degeneracy = 0;
    double w0 = 0.0;
    double epsilon = 0.0;
    double bound = 0.0;                 ///< per-vertex inclusion guarantee
    double chi_f_upper = 0.0;           ///< 1 / bound
    std::vector<double> condition_lhs;  ///< by vertex id
    bool all_conditions_hold = false;
};

/// Degenerate triangle-free driver: degeneracy order, constant w0 and
/// eps = 1/(2 ln d), per-vertex condition evaluation, bound and chi_f bound.
inline MainDriverReport theorem_main_driver(const Graph& g)
{
    if (auto t = find_triangle(g)) {
        throw std::domain_error("graph contains triangle (" + std::to_string(t->a + 1) + "," +
                                std::to_string(t->b + 1) + "," + std::to_string(t->c + 1) + ")");
    }
    auto [ordered, d] = degeneracy_order(g);
    if (d < 3) {
        throw std::domain_error("degeneracy " + std::to_string(d) + " is below 3");
    }
    MainDriverReport report{std::move(ordered), d, 0.0, 0.0, 0.0, 0.0, {}, false};
    report.w0 = degenerate_start_weight(d);
    report.epsilon = degenerate_epsilon(d);
    report.bound = mainproc_bound(report.epsilon, report.w0);
    report.chi_f_upper = 1.0 / report.bound;
    const std::vector<double> w0(g.vertex_count(), report.w0);
    report.condition_lhs.resize(g.vertex_count());
    report.all_conditions_hold = true;
    for (std::size_t p = 0; p < g.vertex_count(); ++p) {
        const auto inst = mainproc_check_and_bound(report.ordered, w0, p, report.epsilon);
        report.condition_lhs[inst.target_vertex] = inst.condition_lhs;
        report.all_conditions_hold = report.all_conditions_hold && inst.valid;
    }
    return report;
}

/// (1 - e^{-1/2}) / 2 = 0.19673...
inline double maingen_alpha() { return -std::expm1(-0.5) / 2.0; }

struct MaingenVertexCheck {
    double lhs;  ///< p(v)
    double rhs;  ///< prod_{u in N_L(v)} (1 - p(u))
    bool ok;
};

inline void validate_probabilities(std::span<const double> p, std::size_t n)
{
    if (p.size() != n) {
        throw std::invalid_argument("expected " + std::to_string(n) + " probabilities, got " +
                                    std::to_string(p.size()));
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (!(p[v] >= 0.0 && p[v] <= 1.0)) {
            throw std::invalid_argument("p of vertex " + std::to_string(v + 1) + " must lie in [0,1], got " +
                                        std::to_string(p[v]));
        }
    }
}

/// p(v) <= prod_{u in N_L(v)} (1 - p(u)) at every vertex; results by vertex id.
/// Comparison has zero slack.
inline std::vector<MaingenVertexCheck> maingen_condition_check(const OrderedGraph& og, std::span<const double> p)
{
    validate_probabilities(p, og.size());
    std::vector<MaingenVertexCheck> out(og.size());
    for (std::size_t i = 0; i < og.size(); ++i) {
        const Vertex v = og.vertex_at(i);
        double product = 1.0;
        for (std::size_t q : og.left_positions(i)) {
            product *= 1.0 - p[og.vertex_at(q)];
        }
        out[v] = {p[v], product, p[v] <= product};
    }
    return out;
}

class ConditionViolated : public std::domain_error {
public:
    ConditionViolated(Vertex worst, double lhs, double rhs)
        : std::domain_error("condition p(v) <= prod (1 - p(u)) fails at vertex " + std::to_string(worst + 1) +
                            ": " + std::to_string(lhs) + " > " + std::to_string(rhs)),
          worst_(worst)
    {
    }
    Vertex worst_vertex() const noexcept { return worst_; }

private:
    Vertex worst_;
};

struct MaingenReport {
    std::vector<double> w0;              ///< p / 2, by vertex id
    double epsilon = 0.5;
    double alpha = 0.0;
    std::vector<double> bound;           ///< alpha * p(v)
    std::vector<double> condition_lhs;   ///< core condition w0(v) exp(2 sum_{N_L} w0), <= 1/2
    std::vector<MaingenVertexCheck> checks;
};

/// Runs the weight process with w0 = p/2 and eps = 1/2, guaranteeing
/// P(v in I) >= alpha p(v). `shrink` (in (0,1]) scales p before checking.
inline MaingenReport maingen_driver(const OrderedGraph& og, std::span<const double> p_in, double shrink = 1.0)
{
    if (!(shrink > 0.0 && shrink <= 1.0)) {
        throw std::invalid_argument("shrink factor must lie in (0,1]");
    }
    validate_probabilities(p_in, og.size());
    std::vector<double> p(p_in.begin(), p_in.end());
    for (double& x : p) {
        x *= shrink;
    }
    MaingenReport report;
    report.checks = maingen_condition_check(og, p);
    std::optional<Vertex> worst;
    double worst_gap = -std::numeric_limits<double>::infinity();
    for (Vertex v = 0; v < og.size(); ++v) {
        const auto& c = report.checks[v];
        if (!c.ok && c.lhs - c.rhs > worst_gap) {
            worst = v;
            worst_gap = c.lhs - c.rhs;
        }
    }
    if (worst) {
        throw ConditionViolated(*worst, report.checks[*worst].lhs, report.checks[*worst].rhs);
    }
    for (Vertex v = 0; v < og.size(); ++v) {
        if (!(p[v] > 0.0)) {
            throw std::invalid_argument("p of vertex " + std::to_string(v + 1) +
                                        " is zero; the process needs positive starting weights");
        }
    }
    report.alpha = maingen_alpha();
    report.w0.resize(p.size());
    report.bound.resize(p.size());
    for (std::size_t v = 0; v < p.size(); ++v) {
        report.w0[v] = p[v] / 2.0;
        report.bound[v] = report.alpha * p[v];
    }
    report.condition_lhs.resize(p.size());
    for (std::size_t i = 0; i < og.size(); ++i) {
        const auto inst = mainproc_check_and_bound(og, report.w0, i, report.epsilon);
        report.condition_lhs[inst.target_vertex] = inst.condition_lhs;
    }
    return report;
}

struct ShearerWeights {
    OrderedGraph ordered;  ///< by decreasing degree
    std::vector<double> p;
    double c;
};

class NoFeasibleConstant : public std::domain_error {
public:
    NoFeasibleConstant(double floor, Vertex worst)
        : std::domain_error("no feasible constant down to c = " + std::to_string(floor) + " (vertex " +
                            std::to_string(worst + 1) + " still violates the condition)"),
          floor_(floor)
    {
    }
    double floor() const noexcept { return floor_; }

private:
    double floor_;
};

/// p(v) = min(1, c ln deg(v) / deg(v)) on the decreasing-degree order; halves
/// c until the product condition holds, trying c, c/2, ..., c/64.
inline ShearerWeights local_shearer_weights(const Graph& g, double c = 0.5)
{
    if (!(c > 0.0)) {
        throw std::invalid_argument("c must be positive");
    }
    if (auto t = find_triangle(g)) {
        throw std::domain_error("graph contains triangle (" + std::to_string(t->a + 1) + "," +
                                std::to_string(t->b + 1) + "," + std::to_string(t->c + 1) + ")");
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) < 3) {
            throw std::domain_error("vertex " + std::to_string(v + 1) + " has degree " +
                                    std::to_string(g.degree(v)) + " < 3");
        }
    }
    OrderedGraph ordered = order_by_decreasing_degree(g);
    const double floor = c / 64.0;
    Vertex worst = 0;
    for (double trial = c; trial >= floor; trial /= 2.0) {
        std::vector<double> p(g.vertex_count());
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            const double d = static_cast<double>(g.degree(v));
            p[v] = std::min(1.0, trial * std::log(d) / d);
        }
        const auto checks = maingen_condition_check(ordered, p);
        const auto bad = std::find_if(checks.begin(), checks.end(), [](const auto& x) { return !x.ok; });
        if (bad == checks.end()) {
            return {std::move(ordered), std::move(p), trial};
        }
        worst = static_cast<Vertex>(bad - checks.begin());
    }
    throw NoFeasibleConstant(floor, worst);
}

} // namespace tfcolor
