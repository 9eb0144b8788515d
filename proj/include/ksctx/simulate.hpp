// Seeded generation of counterfactual assignment streams with a prescribed
// number of contextual entries, and empirical functional values over them.
//
// Determinism contract: the generator is SplitMix64 (Vigna's reference
// constants, 64-bit output), bounded draws use rejection sampling below
// 2^64 mod n, contextual positions come from one Fisher-Yates shuffle
// (n-1 draws, i = n-1 .. 1), then each entry consumes exactly one further
// draw for its global sign. Streams are therefore bit-exact across
// platforms for a fixed (n, k, seed).
#pragma once

#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ksctx/enumeration.hpp"
#include "ksctx/errors.hpp"
#include "ksctx/rational.hpp"
#include "ksctx/scenario.hpp"

namespace ksctx {

/// SplitMix64: state advances by the golden-gamma constant; output is the
/// standard 30/27/31 xor-shift multiply finalizer.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform draw in [0, bound); rejection keeps it exactly uniform.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

  private:
    std::uint64_t state_;
};

struct StreamSpec {
    std::uint64_t n_total = 0;
    std::uint64_t n_contextual = 0;
    std::uint64_t seed = 0;
};

struct Stream {
    std::vector<Assignment> entries;
    StreamSpec spec;
};

namespace detail {

/// The stream construction draws entries from the four assignment families
/// of a CHSH-shaped scenario: 2 observables per party, all four cross
/// contexts, and a functional covering each context once with exactly one
/// negative coefficient. Returns the variable flipped by the contextual
/// families: the negative context's right observable as seen by its left
/// partner.
inline std::size_t chsh_flip_variable(const Scenario& s) {
    std::size_t left = 0, right = 0;
    for (const Observable& o : s.observables()) (o.party == Party::Left ? left : right) += 1;
    if (left != 2 || right != 2)
        throw SpecInvalid("stream generation needs exactly 2 observables per party");
    if (s.contexts().size() != 4)
        throw SpecInvalid("stream generation needs all 4 cross contexts");
    if (s.functional().size() != 4)
        throw SpecInvalid("stream generation needs a functional term per context");
    std::vector<int> coefficient(4, 0);
    for (const FunctionalTerm& term : s.functional()) {
        if (coefficient[term.context] != 0)
            throw SpecInvalid("stream generation needs each context in the functional once");
        coefficient[term.context] = term.coefficient;
    }
    std::size_t negative_context = 4;
    int negatives = 0;
    for (std::size_t c = 0; c < 4; ++c)
        if (coefficient[c] == -1) {
            negative_context = c;
            ++negatives;
        }
    if (negatives != 1)
        throw SpecInvalid("stream generation needs exactly one negative coefficient");
    return s.context_variables(negative_context).second;
}

}  // namespace detail

/// Deterministic stream: `n_contextual` entries from the two contextual
/// families (value 4 on the functional), the rest from the two
/// noncontextual families (value 2); positions seeded-shuffled, each
/// entry's global sign drawn uniformly.
inline Stream generate_stream(const Scenario& s, const StreamSpec& spec) {
    if (spec.n_total == 0) throw SpecInvalid("stream needs at least one entry");
    if (spec.n_contextual > spec.n_total)
        throw SpecInvalid("contextual count exceeds stream length");
    const std::size_t flip = detail::chsh_flip_variable(s);

    std::vector<bool> contextual(spec.n_total, false);
    for (std::uint64_t i = 0; i < spec.n_contextual; ++i) contextual[i] = true;

    SplitMix64 rng(spec.seed);
    for (std::uint64_t i = spec.n_total - 1; i >= 1; --i) {
        const std::uint64_t j = rng.next_below(i + 1);
        const bool tmp = contextual[i];
        contextual[i] = contextual[j];
        contextual[j] = tmp;
    }

    Stream stream;
    stream.spec = spec;
    stream.entries.reserve(spec.n_total);
    for (std::uint64_t i = 0; i < spec.n_total; ++i) {
        const std::int8_t sign = rng.next_below(2) == 0 ? 1 : -1;
        Assignment entry;
        entry.values.assign(s.variable_count(), sign);
        if (contextual[i]) entry.values[flip] = static_cast<std::int8_t>(-sign);
        stream.entries.push_back(std::move(entry));
    }
    return stream;
}

/// Mean functional value over the stream, exactly.
inline Rational empirical_functional(const Scenario& s, const Stream& stream) {
    if (stream.entries.empty()) throw EmptyStream();
    Rational sum = 0;
    for (const Assignment& entry : stream.entries) sum += functional_value(s, entry);
    return sum / static_cast<Integer>(stream.entries.size());
}

/// Number of contextual entries for a stream of length n to approximate the
/// target: round(n (lambda - 2) / 2), half away from zero.
inline std::uint64_t contextual_count_for_lambda(const Rational& lambda_target, std::uint64_t n) {
    if (lambda_target < 2 || lambda_target > 4)
        throw TargetOutOfRange("stream targets must satisfy 2 <= lambda <= 4, got " +
                               rational_string(lambda_target));
    const Rational exact = Rational(n) * (lambda_target - 2) / 2;
    const Integer rounded = rational_floor(exact + Rational(1, 2));
    return static_cast<std::uint64_t>(rounded);
}

inline Stream stream_for_lambda(const Scenario& s, const Rational& lambda_target, std::uint64_t n,
                                std::uint64_t seed) {
    StreamSpec spec;
    spec.n_total = n;
    spec.n_contextual = contextual_count_for_lambda(lambda_target, n);
    spec.seed = seed;
    return generate_stream(s, spec);
}

/// CSV with one column per contextual variable plus a `contextual` flag.
inline void write_stream_csv(const Scenario& s, const Stream& stream, std::ostream& out) {
    for (std::size_t v = 0; v < s.variable_count(); ++v)
        out << (v ? "," : "") << s.variable_name(v);
    out << ",contextual\n";
    for (const Assignment& entry : stream.entries) {
        for (std::size_t v = 0; v < s.variable_count(); ++v)
            out << (v ? "," : "") << detail::signed_unit(entry.values[v]);
        out << "," << (is_noncontextual(s, entry) ? 0 : 1) << "\n";
    }
}

/// Space-aligned variant of the CSV for human reading.
inline void write_stream_table(const Scenario& s, const Stream& stream, std::ostream& out) {
    for (std::size_t v = 0; v < s.variable_count(); ++v)
        out << (v ? " " : "") << s.variable_name(v);
    out << " contextual\n";
    for (const Assignment& entry : stream.entries) {
        for (std::size_t v = 0; v < s.variable_count(); ++v)
            out << (v ? " " : "") << detail::signed_unit(entry.values[v]);
        out << " " << (is_noncontextual(s, entry) ? 0 : 1) << "\n";
    }
}

}  // namespace ksctx
