// Exhaustive enumeration of contextual value assignments, classification of
// noncontextual ones, and evaluation of the scenario functional. Everything
// here is integer arithmetic.
#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "ksctx/errors.hpp"
#include "ksctx/scenario.hpp"

namespace ksctx {

/// Total map from contextual variables (canonical order) to {-1, +1}.
struct Assignment {
    std::vector<std::int8_t> values;

    bool operator==(const Assignment& other) const { return values == other.values; }
};

/// One row of the full assignment table: the per-variable values plus the
/// in-context products, both in canonical order.
struct ExpectationRow {
    std::vector<std::int8_t> singles;
    std::vector<std::int8_t> joints;
};

inline constexpr std::size_t kMaxEnumerationVariables = 30;

inline std::uint64_t assignment_count(const Scenario& s) {
    const std::size_t m = s.variable_count();
    if (m > kMaxEnumerationVariables) throw ScenarioTooLarge(m);
    return std::uint64_t{1} << m;
}

/// Assignment at position `index` in the lexicographic order with -1 < +1:
/// bit (m-1-j) of the index carries variable j, so index 0 is all -1.
inline Assignment assignment_from_index(const Scenario& s, std::uint64_t index) {
    const std::size_t m = s.variable_count();
    Assignment a;
    a.values.resize(m);
    for (std::size_t j = 0; j < m; ++j)
        a.values[j] = (index >> (m - 1 - j)) & 1 ? std::int8_t{1} : std::int8_t{-1};
    return a;
}

inline std::uint64_t assignment_index(const Scenario& s, const Assignment& a) {
    const std::size_t m = s.variable_count();
    if (a.values.size() != m)
        throw std::invalid_argument("assignment does not match the scenario's variables");
    std::uint64_t index = 0;
    for (std::size_t j = 0; j < m; ++j)
        if (a.values[j] > 0) index |= std::uint64_t{1} << (m - 1 - j);
    return index;
}

/// All 2^m assignments in lexicographic order (-1 before +1).
inline std::vector<Assignment> enumerate_assignments(const Scenario& s) {
    const std::uint64_t total = assignment_count(s);
    std::vector<Assignment> out;
    out.reserve(total);
    for (std::uint64_t i = 0; i < total; ++i) out.push_back(assignment_from_index(s, i));
    return out;
}

/// True iff every observable takes the same value alongside every partner.
inline bool is_noncontextual(const Scenario& s, const Assignment& a) {
    for (std::size_t obs = 0; obs < s.observables().size(); ++obs) {
        const std::vector<std::size_t>& vars = s.variables_of(obs);
        for (std::size_t k = 1; k < vars.size(); ++k)
            if (a.values[vars[k]] != a.values[vars[0]]) return false;
    }
    return true;
}

/// Number of observables whose value depends on the partner. Zero exactly
/// when the assignment is noncontextual.
inline int contextuality_count(const Scenario& s, const Assignment& a) {
    int count = 0;
    for (std::size_t obs = 0; obs < s.observables().size(); ++obs) {
        const std::vector<std::size_t>& vars = s.variables_of(obs);
        for (std::size_t k = 1; k < vars.size(); ++k) {
            if (a.values[vars[k]] != a.values[vars[0]]) {
                ++count;
                break;
            }
        }
    }
    return count;
}

/// Signed sum over functional terms of coefficient * x_y * y_x.
inline int functional_value(const Scenario& s, const Assignment& a) {
    int sum = 0;
    for (const FunctionalTerm& t : s.functional()) {
        auto [lv, rv] = s.context_variables(t.context);
        sum += t.coefficient * a.values[lv] * a.values[rv];
    }
    return sum;
}

inline ExpectationRow expectation_row(const Scenario& s, const Assignment& a) {
    ExpectationRow row;
    row.singles = a.values;
    row.joints.reserve(s.contexts().size());
    for (std::size_t c = 0; c < s.contexts().size(); ++c) {
        auto [lv, rv] = s.context_variables(c);
        row.joints.push_back(static_cast<std::int8_t>(a.values[lv] * a.values[rv]));
    }
    return row;
}

namespace detail {

inline const char* signed_unit(int v) { return v > 0 ? "+1" : "-1"; }

}  // namespace detail

/// CSV of the full assignment table: variable columns in canonical order,
/// joint columns in context order, then `noncontextual` (0/1) and
/// `functional`. Values are -1/+1 literals.
inline void write_assignment_csv(const Scenario& s, std::ostream& out) {
    for (std::size_t j = 0; j < s.variable_count(); ++j) out << s.variable_name(j) << ",";
    for (std::size_t c = 0; c < s.contexts().size(); ++c) out << s.joint_name(c) << ",";
    out << "noncontextual,functional\n";
    const std::uint64_t total = assignment_count(s);
    for (std::uint64_t i = 0; i < total; ++i) {
        const Assignment a = assignment_from_index(s, i);
        const ExpectationRow row = expectation_row(s, a);
        for (std::int8_t v : row.singles) out << detail::signed_unit(v) << ",";
        for (std::int8_t v : row.joints) out << detail::signed_unit(v) << ",";
        out << (is_noncontextual(s, a) ? 1 : 0) << "," << functional_value(s, a) << "\n";
    }
}

/// Space-aligned variant of the same table for human consumption.
inline void write_assignment_table(const Scenario& s, std::ostream& out) {
    for (std::size_t j = 0; j < s.variable_count(); ++j) out << s.variable_name(j) << " ";
    for (std::size_t c = 0; c < s.contexts().size(); ++c) out << s.joint_name(c) << " ";
    out << "noncontextual functional\n";
    const std::uint64_t total = assignment_count(s);
    for (std::uint64_t i = 0; i < total; ++i) {
        const Assignment a = assignment_from_index(s, i);
        const ExpectationRow row = expectation_row(s, a);
        for (std::int8_t v : row.singles) out << detail::signed_unit(v) << " ";
        for (std::int8_t v : row.joints) out << detail::signed_unit(v) << " ";
        out << (is_noncontextual(s, a) ? 1 : 0) << " " << functional_value(s, a) << "\n";
    }
}

}  // namespace ksctx
