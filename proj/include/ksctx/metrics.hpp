// Contextuality quantifiers: the minimal fraction of contextual assignments
// in a mixture reproducing a target functional value, the closed-form answer
// for the CHSH functional, the contextual:noncontextual ratio, and the
// average contextuality count per quantum.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ksctx/enumeration.hpp"
#include "ksctx/errors.hpp"
#include "ksctx/rational.hpp"
#include "ksctx/scenario.hpp"
#include "ksctx/simplex.hpp"

namespace ksctx {

/// Probability mixture over assignments, keyed by assignment index and kept
/// sorted by index. All weights are positive and sum to one.
struct Mixture {
    std::vector<std::pair<std::uint64_t, Rational>> weights;
};

inline void validate_mixture(const Scenario& s, const Mixture& m) {
    const std::uint64_t total = assignment_count(s);
    Rational sum = 0;
    std::uint64_t previous = 0;
    bool first = true;
    for (const auto& [index, weight] : m.weights) {
        if (index >= total) throw std::invalid_argument("mixture names an out-of-range assignment");
        if (!first && index <= previous) throw std::invalid_argument("mixture indices must increase");
        if (weight <= 0) throw std::invalid_argument("mixture weights must be positive");
        sum += weight;
        previous = index;
        first = false;
    }
    if (sum != 1) throw std::invalid_argument("mixture weights must sum to 1");
}

inline Rational mixture_functional(const Scenario& s, const Mixture& m) {
    Rational value = 0;
    for (const auto& [index, weight] : m.weights)
        value += weight * functional_value(s, assignment_from_index(s, index));
    return value;
}

/// Total weight carried by contextual assignments.
inline Rational mixture_contextual_weight(const Scenario& s, const Mixture& m) {
    Rational value = 0;
    for (const auto& [index, weight] : m.weights)
        if (!is_noncontextual(s, assignment_from_index(s, index))) value += weight;
    return value;
}

/// Expected number of contextual observables per quantum.
inline Rational average_contextual_per_quantum(const Scenario& s, const Mixture& m) {
    Rational value = 0;
    for (const auto& [index, weight] : m.weights)
        value += weight * contextuality_count(s, assignment_from_index(s, index));
    return value;
}

/// Whether the mixture must reproduce the target exactly or only reach it.
enum class TargetMode { Exact, AtLeast };

struct ContextualityReport {
    Rational lambda_target;
    Rational min_contextual_fraction;
    std::pair<Rational, Rational> ratio_contextual_to_noncontextual;
    Mixture witness;
    TargetMode mode = TargetMode::Exact;
};

/// Default rational stand-in for the quantum maximum 2*sqrt(2) when a
/// symbolic target is requested.
inline const Rational kTsirelsonApproximation{707, 250};

/// sqrt(2) - 1, the closed-form fraction at the quantum maximum, as a
/// 12-significant-digit decimal (the exact value is irrational).
inline constexpr const char* kTsirelsonClosedFormDecimal = "0.414213562373";

/// Analytic CHSH answer max(0, (|lambda| - 2) / 2); the linear program must
/// agree with it on every tested target.
inline Rational fraction_closed_form(const Rational& lambda_target) {
    const Rational magnitude = lambda_target < 0 ? Rational(-lambda_target) : lambda_target;
    if (magnitude > 4)
        throw TargetOutOfRange("closed form is defined for -4 <= lambda <= 4, got " +
                               rational_string(lambda_target));
    if (magnitude <= 2) return Rational(0);
    return (magnitude - 2) / 2;
}

namespace detail {

/// Lexicographically smallest optimal support. An optimal basic feasible
/// solution of the two-row program has at most two positive weights, so
/// searching singletons then pairs in index order is exhaustive.
inline std::optional<Mixture> lex_smallest_witness(const std::vector<Rational>& values,
                                                   const std::vector<bool>& contextual,
                                                   const Rational& lambda,
                                                   const Rational& optimum, TargetMode mode) {
    const std::size_t n = values.size();
    auto cost_of = [&](std::size_t i) { return Rational(contextual[i] ? 1 : 0); };

    for (std::size_t i = 0; i < n; ++i) {
        const bool reaches =
            mode == TargetMode::Exact ? values[i] == lambda : values[i] >= lambda;
        if (reaches && cost_of(i) == optimum) return Mixture{{{i, Rational(1)}}};
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Rational w;  // weight on index i
            if (mode == TargetMode::Exact) {
                if (values[i] == values[j]) continue;  // covered by singletons
                w = (lambda - values[j]) / (values[i] - values[j]);
            } else if (contextual[i] != contextual[j]) {
                // the cost equation pins the split
                w = contextual[i] ? optimum : 1 - optimum;
            } else {
                if (cost_of(i) != optimum || values[i] == values[j]) continue;
                w = (lambda - values[j]) / (values[i] - values[j]);  // tight split
            }
            if (w <= 0 || w >= 1) continue;
            const Rational mixed = w * values[i] + (1 - w) * values[j];
            const bool reaches = mode == TargetMode::Exact ? mixed == lambda : mixed >= lambda;
            if (!reaches) continue;
            if (w * cost_of(i) + (1 - w) * cost_of(j) != optimum) continue;
            return Mixture{{{i, w}, {j, 1 - w}}};
        }
    }
    return std::nullopt;
}

}  // namespace detail

/// Minimizes the total weight of contextual assignments over all mixtures
/// whose expected functional value equals (or, in AtLeast mode, reaches)
/// the target, by exact rational simplex over every assignment.
inline ContextualityReport min_contextual_fraction(const Scenario& s, const Rational& lambda_target,
                                                   TargetMode mode = TargetMode::Exact) {
    const std::uint64_t total = assignment_count(s);
    std::vector<Rational> values;
    std::vector<bool> contextual;
    values.reserve(total);
    contextual.reserve(total);
    Rational lo, hi;
    for (std::uint64_t i = 0; i < total; ++i) {
        const Assignment a = assignment_from_index(s, i);
        const Rational value = functional_value(s, a);
        if (i == 0 || value < lo) lo = value;
        if (i == 0 || value > hi) hi = value;
        values.push_back(value);
        contextual.push_back(!is_noncontextual(s, a));
    }
    if (lambda_target > hi || (mode == TargetMode::Exact && lambda_target < lo))
        throw InfeasibleTarget("target " + rational_string(lambda_target) +
                               " lies outside the attainable range [" + rational_string(lo) +
                               ", " + rational_string(hi) + "]");

    // Columns: one weight per assignment, plus a surplus column in AtLeast
    // mode turning  sum w.f >= lambda  into  sum w.f - surplus = lambda.
    const std::size_t n = values.size() + (mode == TargetMode::AtLeast ? 1 : 0);
    LinearProgram lp;
    lp.cost.assign(n, Rational(0));
    for (std::size_t i = 0; i < values.size(); ++i)
        if (contextual[i]) lp.cost[i] = 1;
    lp.equality_lhs.assign(2, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < values.size(); ++i) {
        lp.equality_lhs[0][i] = 1;
        lp.equality_lhs[1][i] = values[i];
    }
    if (mode == TargetMode::AtLeast) lp.equality_lhs[1][n - 1] = -1;
    lp.equality_rhs = {Rational(1), lambda_target};

    const SimplexResult lp_result = solve_simplex(lp);
    if (!lp_result.feasible)
        throw InfeasibleTarget("no mixture reproduces target " + rational_string(lambda_target));

    ContextualityReport report;
    report.lambda_target = lambda_target;
    report.mode = mode;
    report.min_contextual_fraction = lp_result.objective;
    report.ratio_contextual_to_noncontextual = {lp_result.objective,
                                                Rational(1) - lp_result.objective};

    std::optional<Mixture> witness = detail::lex_smallest_witness(
        values, contextual, lambda_target, lp_result.objective, mode);
    if (witness) {
        report.witness = std::move(*witness);
    } else {
        // unreachable for two-row programs; keep the solver's own vertex
        for (std::size_t i = 0; i < values.size(); ++i)
            if (lp_result.solution[i] > 0)
                report.witness.weights.emplace_back(i, lp_result.solution[i]);
    }
    validate_mixture(s, report.witness);
    return report;
}

/// Whether a zero two-valued-state count already forces one contextual
/// breach per quantum: fraction 1 when no state exists, otherwise 0 with
/// the undetermined flag raised (the positive-count case is open).
struct KsStatement {
    Rational fraction;
    bool undetermined;
};

inline KsStatement ks_fraction_statement(std::uint64_t two_valued_state_count) {
    if (two_valued_state_count == 0) return {Rational(1), false};
    return {Rational(0), true};
}

/// "p:q" with p, q scaled to the smallest nonnegative integers.
inline std::string ratio_string(const std::pair<Rational, Rational>& ratio) {
    const auto& [p, q] = ratio;
    if (p == 0) return "0:1";
    if (q == 0) return "1:0";
    const Rational r = p / q;
    return numerator(r).str() + ":" + denominator(r).str();
}

inline std::string report_text(const ContextualityReport& report) {
    std::ostringstream out;
    out << "lambda=" << rational_with_decimal(report.lambda_target) << "\n";
    if (report.mode == TargetMode::AtLeast) out << "mode=at-least\n";
    out << "fraction=" << rational_with_decimal(report.min_contextual_fraction) << "\n";
    out << "ratio=" << ratio_string(report.ratio_contextual_to_noncontextual) << "\n";
    out << "witness_support=";
    for (std::size_t i = 0; i < report.witness.weights.size(); ++i) {
        const auto& [index, weight] = report.witness.weights[i];
        out << (i ? " " : "") << index << ":" << rational_string(weight);
    }
    out << "\n";
    return out.str();
}

}  // namespace ksctx
