// Kochen-Specker hypergraph analysis: parsing, exhaustive enumeration of
// two-valued states (exactly one atom true per context) by backtracking
// with constraint propagation, and the unital/separating checks relevant
// to Boolean-algebra embeddability.
#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ksctx/errors.hpp"

namespace ksctx {

inline constexpr std::size_t kMaxHypergraphAtoms = 128;

/// Atoms ordered by first appearance; contexts are lists of atom indices.
struct Hypergraph {
    std::vector<std::string> atoms;
    std::vector<std::vector<std::size_t>> contexts;
};

inline void validate_hypergraph(const Hypergraph& hg) {
    for (const std::vector<std::size_t>& ctx : hg.contexts) {
        if (ctx.size() < 2) throw std::invalid_argument("context has fewer than 2 atoms");
        for (std::size_t atom : ctx) {
            if (atom >= hg.atoms.size()) throw std::invalid_argument("context names an unknown atom");
            if (std::count(ctx.begin(), ctx.end(), atom) > 1)
                throw std::invalid_argument("context repeats an atom");
        }
    }
}

/// Format: one context per line as whitespace-separated atom labels;
/// '#' starts a comment; blank lines are ignored.
inline Hypergraph parse_hypergraph(std::istream& in) {
    Hypergraph hg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::vector<std::size_t> context;
        std::string label;
        while (fields >> label) {
            std::size_t index = hg.atoms.size();
            for (std::size_t i = 0; i < hg.atoms.size(); ++i)
                if (hg.atoms[i] == label) {
                    index = i;
                    break;
                }
            if (index == hg.atoms.size()) hg.atoms.push_back(label);
            if (std::find(context.begin(), context.end(), index) != context.end())
                throw DuplicateAtomInContext(line_no, label);
            context.push_back(index);
        }
        if (context.empty()) continue;
        if (context.size() < 2)
            throw ParseError(line_no, "a context needs at least 2 atoms");
        hg.contexts.push_back(std::move(context));
    }
    if (hg.contexts.empty()) throw ParseError(line_no, "hypergraph declares no contexts");
    return hg;
}

inline Hypergraph parse_hypergraph(const std::string& text) {
    std::istringstream in(text);
    return parse_hypergraph(in);
}

/// Total {0,1} assignment with exactly one true atom per context.
struct TwoValuedState {
    std::vector<std::uint8_t> value;  // one entry per atom
};

inline bool is_two_valued_state(const Hypergraph& hg, const TwoValuedState& state) {
    if (state.value.size() != hg.atoms.size()) return false;
    for (const std::vector<std::size_t>& ctx : hg.contexts) {
        std::size_t ones = 0;
        for (std::size_t atom : ctx) ones += state.value[atom];
        if (ones != 1) return false;
    }
    return true;
}

struct StateEnumeration {
    std::vector<TwoValuedState> states;
    bool exhaustive = true;
};

namespace detail {

class StateSearch {
  public:
    StateSearch(const Hypergraph& hg, std::optional<std::uint64_t> limit)
        : hg_(hg), limit_(limit) {
        const std::size_t n = hg.atoms.size();
        atom_contexts_.resize(n);
        for (std::size_t c = 0; c < hg.contexts.size(); ++c)
            for (std::size_t atom : hg.contexts[c]) atom_contexts_[atom].push_back(c);
        value_.assign(n, -1);
        zeros_.assign(hg.contexts.size(), 0);
        ones_.assign(hg.contexts.size(), 0);

        // decide shared atoms first: descending context degree, ties by
        // first appearance
        order_.resize(n);
        for (std::size_t i = 0; i < n; ++i) order_[i] = i;
        std::stable_sort(order_.begin(), order_.end(), [this](std::size_t a, std::size_t b) {
            return atom_contexts_[a].size() > atom_contexts_[b].size();
        });
    }

    StateEnumeration run() {
        dfs(0);
        return {std::move(states_), !truncated_};
    }

  private:
    /// Assigns atom=v and propagates; returns false on contradiction.
    /// Every placed value is recorded on the trail for undoing.
    bool place(std::size_t atom, std::int8_t v) {
        std::vector<std::pair<std::size_t, std::int8_t>> work{{atom, v}};
        while (!work.empty()) {
            auto [a, x] = work.back();
            work.pop_back();
            if (value_[a] != -1) {
                if (value_[a] != x) return false;
                continue;
            }
            value_[a] = x;
            trail_.push_back(a);
            // update every context counter before reporting a conflict, so
            // that unwind() stays the exact inverse of this loop
            bool consistent = true;
            for (std::size_t c : atom_contexts_[a]) {
                const std::vector<std::size_t>& ctx = hg_.contexts[c];
                if (x == 1) {
                    if (++ones_[c] > 1)
                        consistent = false;
                    else
                        for (std::size_t mate : ctx)
                            if (mate != a && value_[mate] == -1) work.emplace_back(mate, 0);
                } else {
                    ++zeros_[c];
                    if (zeros_[c] == ctx.size())
                        consistent = false;
                    else if (zeros_[c] + 1 == ctx.size() && ones_[c] == 0)
                        for (std::size_t mate : ctx)
                            if (value_[mate] == -1) work.emplace_back(mate, 1);
                }
            }
            if (!consistent) return false;
        }
        return true;
    }

    void unwind(std::size_t mark) {
        while (trail_.size() > mark) {
            const std::size_t a = trail_.back();
            trail_.pop_back();
            for (std::size_t c : atom_contexts_[a])
                value_[a] == 1 ? --ones_[c] : --zeros_[c];
            value_[a] = -1;
        }
    }

    void dfs(std::size_t pos) {
        if (truncated_) return;
        while (pos < order_.size() && value_[order_[pos]] != -1) ++pos;
        if (pos == order_.size()) {
            TwoValuedState state;
            state.value.reserve(value_.size());
            for (std::int8_t v : value_) state.value.push_back(static_cast<std::uint8_t>(v));
            states_.push_back(std::move(state));
            if (limit_ && states_.size() >= *limit_) truncated_ = true;
            return;
        }
        const std::size_t atom = order_[pos];
        for (std::int8_t v : {std::int8_t(0), std::int8_t(1)}) {
            const std::size_t mark = trail_.size();
            if (place(atom, v)) dfs(pos + 1);
            unwind(mark);
            if (truncated_) return;
        }
    }

    const Hypergraph& hg_;
    std::optional<std::uint64_t> limit_;
    std::vector<std::vector<std::size_t>> atom_contexts_;
    std::vector<std::int8_t> value_;
    std::vector<std::size_t> zeros_, ones_, order_, trail_;
    std::vector<TwoValuedState> states_;
    bool truncated_ = false;
};

}  // namespace detail

/// All two-valued states (exhaustive == true), or the first `limit` found
/// (exhaustive == false when the search was cut short).
inline StateEnumeration enumerate_two_valued_states(const Hypergraph& hg,
                                                    std::optional<std::uint64_t> limit = {}) {
    validate_hypergraph(hg);
    if (hg.atoms.size() > kMaxHypergraphAtoms) throw TooManyAtoms(hg.atoms.size());
    if (limit && *limit == 0) return {{}, false};
    return detail::StateSearch(hg, limit).run();
}

struct EmbeddabilityReport {
    bool unital = false;     // every atom is true in some state
    bool separating = false;  // every atom pair is split by some state
};

/// Both checks need the complete state list; a truncated enumeration is
/// rejected rather than silently reporting on a subset.
inline EmbeddabilityReport embeddability_checks(const Hypergraph& hg,
                                                const StateEnumeration& enumeration) {
    if (!enumeration.exhaustive) throw NonExhaustiveStates();
    const std::size_t n = hg.atoms.size();
    EmbeddabilityReport report;

    report.unital = true;
    for (std::size_t a = 0; a < n && report.unital; ++a) {
        bool hit = false;
        for (const TwoValuedState& s : enumeration.states)
            if (s.value[a] == 1) {
                hit = true;
                break;
            }
        report.unital = hit;
    }

    report.separating = true;
    for (std::size_t a = 0; a < n && report.separating; ++a)
        for (std::size_t b = a + 1; b < n && report.separating; ++b) {
            bool split = false;
            for (const TwoValuedState& s : enumeration.states)
                if (s.value[a] != s.value[b]) {
                    split = true;
                    break;
                }
            report.separating = split;
        }
    return report;
}

}  // namespace ksctx
