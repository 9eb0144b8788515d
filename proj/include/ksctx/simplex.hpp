// Two-phase primal simplex over exact rationals for small dense problems:
// minimize cost . x subject to A x = b, x >= 0. Bland's smallest-index rule
// for both entering and leaving variables guarantees termination without
// any numeric tolerance.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ksctx/rational.hpp"

namespace ksctx {

struct LinearProgram {
    std::vector<std::vector<Rational>> equality_lhs;  // rows of A
    std::vector<Rational> equality_rhs;               // b
    std::vector<Rational> cost;                       // c
};

struct SimplexResult {
    bool feasible = false;
    Rational objective;
    std::vector<Rational> solution;
};

namespace detail {

class SimplexTableau {
  public:
    SimplexTableau(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
                   std::vector<std::size_t> basis)
        : a_(std::move(a)), b_(std::move(b)), basis_(std::move(basis)) {}

    std::size_t rows() const { return a_.size(); }
    std::size_t columns() const { return a_.empty() ? 0 : a_[0].size(); }
    const std::vector<std::size_t>& basis() const { return basis_; }
    const Rational& rhs(std::size_t row) const { return b_[row]; }
    const Rational& coefficient(std::size_t row, std::size_t col) const { return a_[row][col]; }

    void pivot(std::size_t row, std::size_t col) {
        const Rational p = a_[row][col];
        for (Rational& x : a_[row]) x /= p;
        b_[row] /= p;
        for (std::size_t r = 0; r < rows(); ++r) {
            if (r == row || a_[r][col] == 0) continue;
            const Rational f = a_[r][col];
            for (std::size_t k = 0; k < columns(); ++k) a_[r][k] -= f * a_[row][k];
            b_[r] -= f * b_[row];
        }
        basis_[row] = col;
    }

    /// Runs Bland-rule iterations to optimality for the given cost vector.
    /// Columns at or beyond `column_limit` are never entered (used to keep
    /// phase-one artificials out of phase two).
    void optimize(const std::vector<Rational>& cost, std::size_t column_limit) {
        for (;;) {
            std::size_t entering = columns();
            for (std::size_t j = 0; j < column_limit; ++j) {
                Rational reduced = cost[j];
                for (std::size_t i = 0; i < rows(); ++i)
                    if (cost[basis_[i]] != 0) reduced -= cost[basis_[i]] * a_[i][j];
                if (reduced < 0) {
                    entering = j;
                    break;
                }
            }
            if (entering == columns()) return;

            std::size_t leaving = rows();
            Rational best_ratio;
            for (std::size_t i = 0; i < rows(); ++i) {
                if (a_[i][entering] <= 0) continue;
                const Rational ratio = b_[i] / a_[i][entering];
                if (leaving == rows() || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leaving])) {
                    leaving = i;
                    best_ratio = ratio;
                }
            }
            if (leaving == rows()) throw std::logic_error("linear program is unbounded");
            pivot(leaving, entering);
        }
    }

    void drop_row(std::size_t row) {
        a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(row));
        b_.erase(b_.begin() + static_cast<std::ptrdiff_t>(row));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(row));
    }

  private:
    std::vector<std::vector<Rational>> a_;
    std::vector<Rational> b_;
    std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Solves the program; `result.feasible == false` signals an empty feasible
/// region. Redundant equality rows are tolerated.
inline SimplexResult solve_simplex(const LinearProgram& lp) {
    const std::size_t m = lp.equality_lhs.size();
    const std::size_t n = lp.cost.size();
    if (lp.equality_rhs.size() != m) throw std::invalid_argument("rhs size mismatch");
    for (const std::vector<Rational>& row : lp.equality_lhs)
        if (row.size() != n) throw std::invalid_argument("lhs row size mismatch");

    // Phase one: minimize the sum of one artificial variable per row.
    std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n + m, Rational(0)));
    std::vector<Rational> b(m);
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = lp.equality_rhs[i] < 0;
        for (std::size_t j = 0; j < n; ++j)
            a[i][j] = flip ? -lp.equality_lhs[i][j] : lp.equality_lhs[i][j];
        b[i] = flip ? -lp.equality_rhs[i] : lp.equality_rhs[i];
        a[i][n + i] = 1;
        basis[i] = n + i;
    }
    detail::SimplexTableau tableau(std::move(a), std::move(b), std::move(basis));

    std::vector<Rational> phase_one_cost(n + m, Rational(0));
    for (std::size_t i = 0; i < m; ++i) phase_one_cost[n + i] = 1;
    tableau.optimize(phase_one_cost, n + m);

    Rational infeasibility = 0;
    for (std::size_t i = 0; i < tableau.rows(); ++i)
        if (tableau.basis()[i] >= n) infeasibility += tableau.rhs(i);
    if (infeasibility != 0) return {};

    // Drive remaining artificials out of the basis; a row with no structural
    // pivot candidate is redundant and dropped.
    for (std::size_t i = tableau.rows(); i-- > 0;) {
        if (tableau.basis()[i] < n) continue;
        std::size_t pivot_col = n;
        for (std::size_t j = 0; j < n; ++j)
            if (tableau.coefficient(i, j) != 0) {
                pivot_col = j;
                break;
            }
        if (pivot_col == n)
            tableau.drop_row(i);
        else
            tableau.pivot(i, pivot_col);
    }

    // Phase two over the structural columns only.
    std::vector<Rational> phase_two_cost = lp.cost;
    phase_two_cost.resize(n + m, Rational(0));
    tableau.optimize(phase_two_cost, n);

    SimplexResult result;
    result.feasible = true;
    result.solution.assign(n, Rational(0));
    for (std::size_t i = 0; i < tableau.rows(); ++i)
        result.solution[tableau.basis()[i]] = tableau.rhs(i);
    result.objective = 0;
    for (std::size_t j = 0; j < n; ++j)
        if (result.solution[j] != 0) result.objective += lp.cost[j] * result.solution[j];
    return result;
}

}  // namespace ksctx
