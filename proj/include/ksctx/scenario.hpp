// Measurement scenarios: observables, two-party contexts, contextual
// variables, and a signed functional over contexts (CHSH and friends).
//
// A contextual variable is an observable tagged with the partner it is
// co-measured with: the pair (a, b) of a context contributes the two
// variables a_b and b_a. Values of contextual variables are always in
// {-1, +1}.
#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ksctx/errors.hpp"

namespace ksctx {

enum class Party { Left, Right };

struct Observable {
    Party party;
    std::string label;
};

/// One observable per party, identified by indices into Scenario::observables().
struct Context {
    std::size_t left;
    std::size_t right;
};

/// Observable `base` co-measured with `partner` (on the other party).
struct ContextualVariable {
    std::size_t base;
    std::size_t partner;
};

struct FunctionalTerm {
    std::size_t context;
    int coefficient;  // -1 or +1
};

class Scenario {
public:
    Scenario(std::vector<Observable> observables, std::vector<Context> contexts,
             std::vector<FunctionalTerm> functional)
        : observables_(std::move(observables)),
          contexts_(std::move(contexts)),
          functional_(std::move(functional)) {
        validate();
        derive_variables();
    }

    const std::vector<Observable>& observables() const { return observables_; }
    const std::vector<Context>& contexts() const { return contexts_; }
    const std::vector<FunctionalTerm>& functional() const { return functional_; }

    /// Contextual variables in canonical order: left-party observables in
    /// declaration order, each expanded by partner in declaration order,
    /// then the right party likewise.
    const std::vector<ContextualVariable>& variables() const { return variables_; }

    std::size_t variable_count() const { return variables_.size(); }

    /// Indices of the variables whose base is observable `obs`, in canonical order.
    const std::vector<std::size_t>& variables_of(std::size_t obs) const {
        return obs_vars_[obs];
    }

    /// The (left variable, right variable) pair of context `c`:
    /// left = x measured alongside y, right = y measured alongside x.
    std::pair<std::size_t, std::size_t> context_variables(std::size_t c) const {
        return context_vars_[c];
    }

    std::string variable_name(std::size_t var) const {
        const ContextualVariable& v = variables_[var];
        return observables_[v.base].label + "_" + observables_[v.partner].label;
    }

    std::string joint_name(std::size_t c) const {
        auto [lv, rv] = context_vars_[c];
        return variable_name(lv) + "*" + variable_name(rv);
    }

    std::optional<std::size_t> find_observable(Party party, const std::string& label) const {
        for (std::size_t i = 0; i < observables_.size(); ++i)
            if (observables_[i].party == party && observables_[i].label == label) return i;
        return std::nullopt;
    }

private:
    void validate() const {
        if (observables_.empty()) throw std::invalid_argument("scenario has no observables");
        std::set<std::pair<int, std::string>> labels;
        for (const Observable& o : observables_) {
            if (o.label.empty()) throw std::invalid_argument("observable label is empty");
            if (!labels.insert({o.party == Party::Left ? 0 : 1, o.label}).second)
                throw std::invalid_argument("duplicate observable label within a party: " + o.label);
        }
        std::set<std::pair<std::size_t, std::size_t>> seen;
        for (const Context& c : contexts_) {
            if (c.left >= observables_.size() || c.right >= observables_.size())
                throw std::invalid_argument("context references an unknown observable");
            if (observables_[c.left].party != Party::Left ||
                observables_[c.right].party != Party::Right)
                throw std::invalid_argument("context must pair one left with one right observable");
            if (!seen.insert({c.left, c.right}).second)
                throw std::invalid_argument("duplicate context");
        }
        for (const FunctionalTerm& t : functional_) {
            if (t.context >= contexts_.size())
                throw std::invalid_argument("functional term references an unknown context");
            if (t.coefficient != 1 && t.coefficient != -1)
                throw std::invalid_argument("functional coefficients must be -1 or +1");
        }
    }

    void derive_variables() {
        obs_vars_.assign(observables_.size(), {});
        context_vars_.assign(contexts_.size(), {0, 0});
        // (base, partner) -> variable index
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
        for (int pass = 0; pass < 2; ++pass) {
            const Party party = pass == 0 ? Party::Left : Party::Right;
            for (std::size_t base = 0; base < observables_.size(); ++base) {
                if (observables_[base].party != party) continue;
                for (std::size_t partner = 0; partner < observables_.size(); ++partner) {
                    const bool paired =
                        party == Party::Left
                            ? context_exists(base, partner)
                            : context_exists(partner, base);
                    if (!paired) continue;
                    index[{base, partner}] = variables_.size();
                    obs_vars_[base].push_back(variables_.size());
                    variables_.push_back({base, partner});
                }
            }
        }
        for (std::size_t c = 0; c < contexts_.size(); ++c) {
            context_vars_[c] = {index.at({contexts_[c].left, contexts_[c].right}),
                                index.at({contexts_[c].right, contexts_[c].left})};
        }
    }

    bool context_exists(std::size_t left, std::size_t right) const {
        for (const Context& c : contexts_)
            if (c.left == left && c.right == right) return true;
        return false;
    }

    std::vector<Observable> observables_;
    std::vector<Context> contexts_;
    std::vector<FunctionalTerm> functional_;
    std::vector<ContextualVariable> variables_;
    std::vector<std::vector<std::size_t>> obs_vars_;
    std::vector<std::pair<std::size_t, std::size_t>> context_vars_;
};

/// The CHSH scenario: observables a, a' (left) and b, b' (right), the four
/// cross contexts, and the functional E(a,b)+E(a,b')+E(a',b)-E(a',b').
inline Scenario builtin_chsh() {
    std::vector<Observable> obs = {{Party::Left, "a"},
                                   {Party::Left, "a'"},
                                   {Party::Right, "b"},
                                   {Party::Right, "b'"}};
    std::vector<Context> ctx = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
    std::vector<FunctionalTerm> fn = {{0, 1}, {1, 1}, {2, 1}, {3, -1}};
    return Scenario(std::move(obs), std::move(ctx), std::move(fn));
}

inline const std::vector<ContextualVariable>& contextual_variables(const Scenario& s) {
    return s.variables();
}

/// Parses the line-oriented scenario format:
///   observable <left|right> <label>
///   context <leftLabel> <rightLabel>
///   functional <leftLabel> <rightLabel> <+1|-1>
/// '#' starts a comment; blank lines are ignored. Declaration order defines
/// the canonical order of observables and contexts.
inline Scenario parse_scenario(std::istream& in) {
    std::vector<Observable> observables;
    std::vector<Context> contexts;
    std::vector<FunctionalTerm> functional;

    auto find_obs = [&](Party party, const std::string& label) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < observables.size(); ++i)
            if (observables[i].party == party && observables[i].label == label) return i;
        return std::nullopt;
    };
    auto find_ctx = [&](std::size_t l, std::size_t r) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < contexts.size(); ++i)
            if (contexts[i].left == l && contexts[i].right == r) return i;
        return std::nullopt;
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string keyword;
        if (!(fields >> keyword)) continue;

        if (keyword == "observable") {
            std::string party_token, label;
            if (!(fields >> party_token >> label))
                throw ParseError(line_no, "expected: observable <left|right> <label>");
            Party party;
            if (party_token == "left")
                party = Party::Left;
            else if (party_token == "right")
                party = Party::Right;
            else
                throw ParseError(line_no, "unknown party '" + party_token + "'");
            if (find_obs(party, label))
                throw ParseError(line_no, "duplicate observable label '" + label + "'");
            observables.push_back({party, label});
        } else if (keyword == "context") {
            std::string ll, rl;
            if (!(fields >> ll >> rl))
                throw ParseError(line_no, "expected: context <leftLabel> <rightLabel>");
            auto l = find_obs(Party::Left, ll);
            auto r = find_obs(Party::Right, rl);
            if (!l) throw ParseError(line_no, "unknown left observable '" + ll + "'");
            if (!r) throw ParseError(line_no, "unknown right observable '" + rl + "'");
            if (find_ctx(*l, *r)) throw ParseError(line_no, "duplicate context");
            contexts.push_back({*l, *r});
        } else if (keyword == "functional") {
            std::string ll, rl, coeff;
            if (!(fields >> ll >> rl >> coeff))
                throw ParseError(line_no, "expected: functional <leftLabel> <rightLabel> <+1|-1>");
            auto l = find_obs(Party::Left, ll);
            auto r = find_obs(Party::Right, rl);
            if (!l) throw ParseError(line_no, "unknown left observable '" + ll + "'");
            if (!r) throw ParseError(line_no, "unknown right observable '" + rl + "'");
            auto c = find_ctx(*l, *r);
            if (!c) throw ParseError(line_no, "functional term names an undeclared context");
            int value;
            if (coeff == "+1" || coeff == "1")
                value = 1;
            else if (coeff == "-1")
                value = -1;
            else
                throw ParseError(line_no, "coefficient must be +1 or -1, got '" + coeff + "'");
            functional.push_back({*c, value});
        } else {
            throw ParseError(line_no, "unknown keyword '" + keyword + "'");
        }
        std::string trailing;
        if (fields >> trailing) throw ParseError(line_no, "trailing tokens after declaration");
    }

    if (contexts.empty()) throw ParseError(line_no, "scenario declares no contexts");
    try {
        return Scenario(std::move(observables), std::move(contexts), std::move(functional));
    } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
    }
}

inline Scenario parse_scenario(const std::string& text) {
    std::istringstream in(text);
    return parse_scenario(in);
}

}  // namespace ksctx
