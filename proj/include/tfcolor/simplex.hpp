#pragma once

// Dense two-phase tableau simplex with Bland's rule, templated on the scalar
// type. Intended for exact rational arithmetic on small LPs.
//
//   minimise c^T x  subject to  A x >= b,  x >= 0.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tfcolor {

enum class LpStatus { optimal, infeasible, unbounded };

template <class Scalar>
struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    Scalar objective{};
    std::vector<Scalar> primal;  ///< x, one per column of A
    std::vector<Scalar> dual;    ///< y >= 0, one per row of A; A^T y <= c and b^T y = objective
};

template <class Scalar>
class CoveringSimplex {
public:
    CoveringSimplex(std::vector<std::vector<Scalar>> a, std::vector<Scalar> b, std::vector<Scalar> c)
        : rows_(b.size()), structural_(c.size()), cost_(std::move(c))
    {
        if (a.size() != rows_) {
            throw std::invalid_argument("constraint matrix row count does not match right-hand side");
        }
        const std::size_t cols = structural_ + 2 * rows_;
        tableau_.assign(rows_, std::vector<Scalar>(cols, Scalar(0)));
        rhs_.resize(rows_);
        basis_.resize(rows_);
        has_artificial_.assign(rows_, false);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (a[i].size() != structural_) {
                throw std::invalid_argument("constraint matrix row has wrong length");
            }
            const bool negate = b[i] < Scalar(0);
            const Scalar sign = negate ? Scalar(-1) : Scalar(1);
            for (std::size_t j = 0; j < structural_; ++j) {
                tableau_[i][j] = sign * a[i][j];
            }
            tableau_[i][surplus(i)] = -sign;
            rhs_[i] = sign * b[i];
            if (negate) {
                basis_[i] = surplus(i);
            } else {
                tableau_[i][artificial(i)] = Scalar(1);
                basis_[i] = artificial(i);
                has_artificial_[i] = true;
            }
        }
    }

    LpSolution<Scalar> solve()
    {
        LpSolution<Scalar> out;
        const std::size_t cols = structural_ + 2 * rows_;

        // phase I: minimise the sum of artificials
        std::vector<Scalar> phase1(cols, Scalar(0));
        for (std::size_t i = 0; i < rows_; ++i) {
            if (has_artificial_[i]) {
                phase1[artificial(i)] = Scalar(1);
            }
        }
        auto allowed1 = [&](std::size_t j) { return !is_artificial(j) || has_artificial_[j - structural_ - rows_]; };
        if (!optimise(phase1, allowed1)) {
            throw std::logic_error("phase I reported unbounded");
        }
        if (objective_ != Scalar(0)) {
            out.status = LpStatus::infeasible;
            return out;
        }
        // drive zero-level artificials out of the basis
        for (std::size_t i = 0; i < rows_; ++i) {
            if (!is_artificial(basis_[i])) {
                continue;
            }
            for (std::size_t j = 0; j < structural_ + rows_; ++j) {
                if (tableau_[i][j] != Scalar(0)) {
                    pivot(i, j);
                    break;
                }
            }
            // a row with no non-artificial support is redundant and keeps its artificial at zero
        }

        // phase II
        std::vector<Scalar> phase2(cols, Scalar(0));
        for (std::size_t j = 0; j < structural_; ++j) {
            phase2[j] = cost_[j];
        }
        auto allowed2 = [&](std::size_t j) { return !is_artificial(j); };
        if (!optimise(phase2, allowed2)) {
            out.status = LpStatus::unbounded;
            return out;
        }
        out.status = LpStatus::optimal;
        out.objective = objective_;
        out.primal.assign(structural_, Scalar(0));
        for (std::size_t i = 0; i < rows_; ++i) {
            if (basis_[i] < structural_) {
                out.primal[basis_[i]] = rhs_[i];
            }
        }
        out.dual.resize(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            out.dual[i] = reduced_[surplus(i)];
        }
        return out;
    }

    std::size_t pivot_count() const noexcept { return pivots_; }

private:
    std::size_t surplus(std::size_t row) const { return structural_ + row; }
    std::size_t artificial(std::size_t row) const { return structural_ + rows_ + row; }
    bool is_artificial(std::size_t col) const { return col >= structural_ + rows_; }

    template <class Allowed>
    bool optimise(const std::vector<Scalar>& cost, Allowed allowed)
    {
        const std::size_t cols = cost.size();
        reduced_ = cost;
        objective_ = Scalar(0);
        for (std::size_t i = 0; i < rows_; ++i) {
            const Scalar& cb = cost[basis_[i]];
            if (cb == Scalar(0)) {
                continue;
            }
            for (std::size_t j = 0; j < cols; ++j) {
                if (tableau_[i][j] != Scalar(0)) {
                    reduced_[j] -= cb * tableau_[i][j];
                }
            }
            objective_ += cb * rhs_[i];
        }
        for (;;) {
            // Bland: lowest-index improving column, lowest-index basic variable among ratio ties
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < cols; ++j) {
                if (allowed(j) && reduced_[j] < Scalar(0)) {
                    entering = j;
                    break;
                }
            }
            if (!entering) {
                return true;
            }
            std::optional<std::size_t> leaving;
            Scalar best_ratio{};
            for (std::size_t i = 0; i < rows_; ++i) {
                const Scalar& coef = tableau_[i][*entering];
                if (!(coef > Scalar(0))) {
                    continue;
                }
                Scalar ratio = rhs_[i] / coef;
                if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
                    leaving = i;
                    best_ratio = std::move(ratio);
                }
            }
            if (!leaving) {
                return false;
            }
            pivot(*leaving, *entering);
        }
    }

    void pivot(std::size_t row, std::size_t col)
    {
        ++pivots_;
        const std::size_t cols = tableau_[row].size();
        const Scalar inv = Scalar(1) / tableau_[row][col];
        for (std::size_t j = 0; j < cols; ++j) {
            if (tableau_[row][j] != Scalar(0)) {
                tableau_[row][j] *= inv;
            }
        }
        rhs_[row] *= inv;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == row || tableau_[i][col] == Scalar(0)) {
                continue;
            }
            const Scalar factor = tableau_[i][col];
            for (std::size_t j = 0; j < cols; ++j) {
                if (tableau_[row][j] != Scalar(0)) {
                    tableau_[i][j] -= factor * tableau_[row][j];
                }
            }
            rhs_[i] -= factor * rhs_[row];
        }
        if (!reduced_.empty() && reduced_[col] != Scalar(0)) {
            const Scalar factor = reduced_[col];
            for (std::size_t j = 0; j < cols; ++j) {
                if (tableau_[row][j] != Scalar(0)) {
                    reduced_[j] -= factor * tableau_[row][j];
                }
            }
            objective_ += factor * rhs_[row];
        }
        basis_[row] = col;
    }

    std::size_t rows_;
    std::size_t structural_;
    std::vector<Scalar> cost_;
    std::vector<std::vector<Scalar>> tableau_;
    std::vector<Scalar> rhs_;
    std::vector<std::size_t> basis_;
    std::vector<bool> has_artificial_;
    std::vector<Scalar> reduced_;
    Scalar objective_{};
    std::size_t pivots_ = 0;
};

/// Convenience wrapper: minimise c^T x subject to A x >= b, x >= 0.
template <class Scalar>
LpSolution<Scalar> solve_lp(std::vector<std::vector<Scalar>> a, std::vector<Scalar> b, std::vector<Scalar> c)
{
    return CoveringSimplex<Scalar>(std::move(a), std::move(b), std::move(c)).solve();
}

} // namespace tfcolor
