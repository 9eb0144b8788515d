#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "ksctx/simulate.hpp"

using ksctx::Rational;
using ksctx::Scenario;
using ksctx::SplitMix64;
using ksctx::Stream;
using ksctx::StreamSpec;

namespace {

Stream make_stream(const Scenario& s, std::uint64_t n, std::uint64_t k, std::uint64_t seed) {
    return ksctx::generate_stream(s, StreamSpec{n, k, seed});
}

std::string csv_of(const Scenario& s, const Stream& stream) {
    std::ostringstream out;
    ksctx::write_stream_csv(s, stream, out);
    return out.str();
}

}  // namespace

TEST_CASE("SplitMix64 reproduces the reference sequences") {
    SplitMix64 zero(0);
    REQUIRE(zero.next() == 0xe220a8397b1dcdafull);
    REQUIRE(zero.next() == 0x6e789e6aa1b965f4ull);
    REQUIRE(zero.next() == 0x06c45d188009454full);

    SplitMix64 seeded(1234567);
    REQUIRE(seeded.next() == 0x599ed017fb08fc85ull);
    REQUIRE(seeded.next() == 0x2c73f08458540fa5ull);
    REQUIRE(seeded.next() == 0x883ebce5a3f27c77ull);
}

TEST_CASE("bounded draws stay in range and cover all residues") {
    SplitMix64 rng(99);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t r = rng.next_below(7);
        REQUIRE(r < 7);
        seen.insert(r);
    }
    REQUIRE(seen.size() == 7);

    SplitMix64 unit(99);
    for (int i = 0; i < 10; ++i) REQUIRE(unit.next_below(1) == 0);

    // identical seeds give identical draw sequences
    SplitMix64 a(5), b(5);
    for (int i = 0; i < 100; ++i) REQUIRE(a.next_below(13) == b.next_below(13));
}

TEST_CASE("streams carry the exact requested contextual count") {
    const Scenario s = ksctx::builtin_chsh();
    for (std::uint64_t seed : {1ull, 2ull, 3ull, 7ull, 42ull}) {
        const Stream stream = make_stream(s, 40, 19, seed);
        REQUIRE(stream.entries.size() == 40);
        std::uint64_t contextual = 0;
        for (const ksctx::Assignment& entry : stream.entries) {
            const std::uint64_t count = ksctx::contextuality_count(s, entry);
            REQUIRE(count <= 1);
            contextual += count;
            REQUIRE(ksctx::functional_value(s, entry) == (count == 1 ? 4 : 2));
        }
        REQUIRE(contextual == 19);
        // 19 entries at value 4 plus 21 at value 2 average to 59/20 = 2.95
        REQUIRE(ksctx::empirical_functional(s, stream) == Rational(59, 20));
    }
}

TEST_CASE("edge mixes produce the pure family values") {
    const Scenario s = ksctx::builtin_chsh();
    REQUIRE(ksctx::empirical_functional(s, make_stream(s, 10, 0, 3)) == 2);
    REQUIRE(ksctx::empirical_functional(s, make_stream(s, 10, 10, 3)) == 4);
}

TEST_CASE("contextual entries flip exactly the negative-context partner view") {
    const Scenario s = ksctx::builtin_chsh();
    REQUIRE(s.variable_name(7) == "b'_a'");
    const Stream stream = make_stream(s, 20, 20, 11);
    for (const ksctx::Assignment& entry : stream.entries) {
        // all variables share one sign except the flipped one
        for (std::size_t v = 0; v < 7; ++v) REQUIRE(entry.values[v] == entry.values[0]);
        REQUIRE(entry.values[7] == -entry.values[0]);
    }
}

TEST_CASE("identical specifications regenerate identical streams") {
    const Scenario s = ksctx::builtin_chsh();
    const Stream first = make_stream(s, 40, 19, 1);
    const Stream second = make_stream(s, 40, 19, 1);
    REQUIRE(first.entries == second.entries);
    REQUIRE(csv_of(s, first) == csv_of(s, second));

    // a different seed rearranges the stream
    const Stream other = make_stream(s, 40, 19, 2);
    REQUIRE_FALSE(first.entries == other.entries);
}

TEST_CASE("small stream matches its frozen transcript") {
    const Scenario s = ksctx::builtin_chsh();
    const Stream stream = make_stream(s, 4, 2, 7);
    REQUIRE(csv_of(s, stream) ==
            "a_b,a_b',a'_b,a'_b',b_a,b_a',b'_a,b'_a',contextual\n"
            "-1,-1,-1,-1,-1,-1,-1,+1,1\n"
            "+1,+1,+1,+1,+1,+1,+1,+1,0\n"
            "-1,-1,-1,-1,-1,-1,-1,+1,1\n"
            "+1,+1,+1,+1,+1,+1,+1,+1,0\n");
    REQUIRE(ksctx::empirical_functional(s, stream) == 3);

    std::ostringstream table;
    ksctx::write_stream_table(s, stream, table);
    REQUIRE(table.str() ==
            "a_b a_b' a'_b a'_b' b_a b_a' b'_a b'_a' contextual\n"
            "-1 -1 -1 -1 -1 -1 -1 +1 1\n"
            "+1 +1 +1 +1 +1 +1 +1 +1 0\n"
            "-1 -1 -1 -1 -1 -1 -1 +1 1\n"
            "+1 +1 +1 +1 +1 +1 +1 +1 0\n");
}

TEST_CASE("target values translate to rounded contextual counts") {
    REQUIRE(ksctx::contextual_count_for_lambda(Rational(2), 40) == 0);
    REQUIRE(ksctx::contextual_count_for_lambda(Rational(4), 40) == 40);
    REQUIRE(ksctx::contextual_count_for_lambda(Rational(3), 40) == 20);
    REQUIRE(ksctx::contextual_count_for_lambda(Rational(707, 250), 40) == 17);  // 16.56 rounds up
    REQUIRE(ksctx::contextual_count_for_lambda(Rational(59, 20), 40) == 19);
    REQUIRE(ksctx::contextual_count_for_lambda(Rational(3), 41) == 21);  // half rounds away
    REQUIRE_THROWS_AS(ksctx::contextual_count_for_lambda(Rational(1), 40),
                      ksctx::TargetOutOfRange);
    REQUIRE_THROWS_AS(ksctx::contextual_count_for_lambda(Rational(9, 2), 40),
                      ksctx::TargetOutOfRange);
}

TEST_CASE("streams built for a target land on the rounded mix") {
    const Scenario s = ksctx::builtin_chsh();
    const Stream stream = ksctx::stream_for_lambda(s, Rational(707, 250), 40, 5);
    REQUIRE(stream.spec.n_contextual == 17);
    REQUIRE(ksctx::empirical_functional(s, stream) == Rational(57, 20));
}

TEST_CASE("stream generation rejects impossible requests") {
    const Scenario s = ksctx::builtin_chsh();
    REQUIRE_THROWS_AS(make_stream(s, 0, 0, 1), ksctx::SpecInvalid);
    REQUIRE_THROWS_AS(make_stream(s, 5, 6, 1), ksctx::SpecInvalid);

    // a scenario without the four-context shape cannot host the construction
    const Scenario narrow = ksctx::parse_scenario(
        "observable left a\nobservable left a'\nobservable right b\nobservable right b'\n"
        "context a b\nfunctional a b +1\n");
    REQUIRE_THROWS_AS(make_stream(narrow, 4, 1, 1), ksctx::SpecInvalid);

    Stream empty;
    REQUIRE_THROWS_AS(ksctx::empirical_functional(s, empty), ksctx::EmptyStream);
}
