// Independent brute-force oracles the tests cross-check the production
// algorithms against. Deliberately naive and structurally different from
// the shipped implementations: support search instead of simplex, full
// hyperplane search instead of double description, bitmask filtering
// instead of backtracking.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "ksctx/enumeration.hpp"
#include "ksctx/ks.hpp"
#include "ksctx/polytope.hpp"
#include "ksctx/rational.hpp"
#include "ksctx/scenario.hpp"

namespace oracles {

/// Minimal contextual weight among mixtures with expected functional value
/// exactly `lambda`, by enumerating candidate supports of size 1 and 2 (an
/// optimum of the two-constraint program lives on such a support).
inline std::optional<ksctx::Rational> min_fraction_by_support_search(
    const ksctx::Scenario& s, const ksctx::Rational& lambda) {
    const std::uint64_t total = ksctx::assignment_count(s);
    std::vector<ksctx::Rational> values;
    std::vector<ksctx::Rational> cost;
    for (std::uint64_t i = 0; i < total; ++i) {
        const ksctx::Assignment a = ksctx::assignment_from_index(s, i);
        values.emplace_back(ksctx::functional_value(s, a));
        cost.emplace_back(ksctx::is_noncontextual(s, a) ? 0 : 1);
    }

    std::optional<ksctx::Rational> best;
    const auto consider = [&](const ksctx::Rational& candidate) {
        if (!best || candidate < *best) best = candidate;
    };
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] == lambda) consider(cost[i]);
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            if (values[i] == values[j]) continue;
            const ksctx::Rational w = (lambda - values[j]) / (values[i] - values[j]);
            if (w < 0 || w > 1) continue;
            consider(w * cost[i] + (1 - w) * cost[j]);
        }
    return best;
}

/// One-dimensional nullspace of a rational matrix, if it is exactly
/// one-dimensional.
inline std::optional<ksctx::RationalVector> nullspace_direction(
    std::vector<ksctx::RationalVector> rows) {
    if (rows.empty()) return std::nullopt;
    const std::size_t m = rows[0].size();
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m && rank < rows.size(); ++c) {
        std::size_t p = rank;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[rank], rows[p]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c] == 0) continue;
            const ksctx::Rational f = rows[r][c] / rows[rank][c];
            for (std::size_t k = c; k < m; ++k) rows[r][k] -= f * rows[rank][k];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    if (rank != m - 1) return std::nullopt;

    std::vector<bool> is_pivot(m, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    std::size_t free_col = m;
    for (std::size_t c = 0; c < m; ++c)
        if (!is_pivot[c]) {
            free_col = c;
            break;
        }
    ksctx::RationalVector v(m, ksctx::Rational(0));
    v[free_col] = 1;
    for (std::size_t r = 0; r < rank; ++r)
        v[pivot_col[r]] = -rows[r][free_col] / rows[r][pivot_col[r]];
    return v;
}

/// Complete facet list by testing every hyperplane spanned by `dim` points
/// for validity; every facet of a full-dimensional polytope is found this
/// way because it contains dim affinely independent vertices.
inline std::vector<ksctx::HalfSpace> facets_by_hyperplane_search(
    const std::vector<ksctx::RationalVector>& points) {
    const std::size_t dim = points[0].size();
    std::vector<ksctx::HalfSpace> found;

    std::vector<std::size_t> pick(dim);
    std::function<void(std::size_t, std::size_t)> recurse = [&](std::size_t start,
                                                                std::size_t chosen) {
        if (chosen == dim) {
            std::vector<ksctx::RationalVector> rows;
            for (std::size_t idx : pick) {
                ksctx::RationalVector row = points[idx];
                row.emplace_back(-1);
                rows.push_back(std::move(row));
            }
            const auto direction = nullspace_direction(std::move(rows));
            if (!direction) return;
            ksctx::RationalVector normal(direction->begin(), direction->end() - 1);
            ksctx::Rational offset = direction->back();

            bool any_below = false, any_above = false;
            for (const ksctx::RationalVector& p : points) {
                const ksctx::Rational side = ksctx::detail::dot(normal, p) - offset;
                if (side < 0) any_below = true;
                if (side > 0) any_above = true;
            }
            if (any_below && any_above) return;  // not a valid inequality
            if (!any_below && !any_above) return;
            if (any_above) {
                for (ksctx::Rational& x : normal) x = -x;
                offset = -offset;
            }
            const ksctx::HalfSpace h = ksctx::make_halfspace(std::move(normal), std::move(offset));
            for (const ksctx::HalfSpace& existing : found)
                if (existing == h) return;
            found.push_back(h);
            return;
        }
        for (std::size_t i = start; i + (dim - chosen) <= points.size(); ++i) {
            pick[chosen] = i;
            recurse(i + 1, chosen + 1);
        }
    };
    recurse(0, 0);
    std::sort(found.begin(), found.end(), ksctx::halfspace_less);
    return found;
}

/// All two-valued states by filtering every {0,1} assignment; feasible for
/// hypergraphs with at most ~20 atoms.
inline std::set<std::vector<std::uint8_t>> naive_two_valued_states(const ksctx::Hypergraph& hg) {
    const std::size_t n = hg.atoms.size();
    std::set<std::vector<std::uint8_t>> states;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
        bool ok = true;
        for (const std::vector<std::size_t>& ctx : hg.contexts) {
            std::size_t ones = 0;
            for (std::size_t atom : ctx) ones += (mask >> atom) & 1;
            if (ones != 1) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        std::vector<std::uint8_t> state(n);
        for (std::size_t atom = 0; atom < n; ++atom)
            state[atom] = static_cast<std::uint8_t>((mask >> atom) & 1);
        states.insert(std::move(state));
    }
    return states;
}

inline std::set<std::vector<std::uint8_t>> as_state_set(
    const std::vector<ksctx::TwoValuedState>& states) {
    std::set<std::vector<std::uint8_t>> out;
    for (const ksctx::TwoValuedState& s : states) out.insert(s.value);
    return out;
}

}  // namespace oracles
