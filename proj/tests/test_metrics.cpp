#include <catch2/catch_amalgamated.hpp>

#include "ksctx/metrics.hpp"
#include "oracles.hpp"

using ksctx::ContextualityReport;
using ksctx::Mixture;
using ksctx::Rational;
using ksctx::Scenario;
using ksctx::TargetMode;

namespace {

Rational fraction_of(const Scenario& s, const Rational& lambda,
                     TargetMode mode = TargetMode::Exact) {
    return ksctx::min_contextual_fraction(s, lambda, mode).min_contextual_fraction;
}

}  // namespace

TEST_CASE("minimal contextual fraction matches the closed form on the acceptance grid") {
    const Scenario s = ksctx::builtin_chsh();
    const std::vector<std::pair<Rational, Rational>> grid = {
        {Rational(2), Rational(0)},           {Rational(9, 4), Rational(1, 8)},
        {Rational(5, 2), Rational(1, 4)},     {Rational(11, 4), Rational(3, 8)},
        {Rational(3), Rational(1, 2)},        {Rational(707, 250), Rational(207, 500)},
        {Rational(7, 2), Rational(3, 4)},     {Rational(4), Rational(1)},
    };
    for (const auto& [lambda, expected] : grid) {
        CAPTURE(ksctx::rational_string(lambda));
        const ContextualityReport report = ksctx::min_contextual_fraction(s, lambda);
        REQUIRE(report.min_contextual_fraction == expected);
        REQUIRE(report.min_contextual_fraction == ksctx::fraction_closed_form(lambda));
        // independent support-search oracle
        const auto oracle = oracles::min_fraction_by_support_search(s, lambda);
        REQUIRE(oracle.has_value());
        REQUIRE(*oracle == expected);
        // witness mixtures certify the optimum
        REQUIRE(ksctx::mixture_functional(s, report.witness) == lambda);
        REQUIRE(ksctx::mixture_contextual_weight(s, report.witness) == expected);
        REQUIRE(report.ratio_contextual_to_noncontextual ==
                std::make_pair(expected, Rational(1) - expected));
    }
}

TEST_CASE("linear program agrees with the closed form across the full target range") {
    const Scenario s = ksctx::builtin_chsh();
    for (int k = -32; k <= 32; ++k) {
        const Rational lambda(k, 8);
        CAPTURE(k);
        REQUIRE(fraction_of(s, lambda) == ksctx::fraction_closed_form(lambda));
    }
}

TEST_CASE("fraction is symmetric, monotone in magnitude, and zero on the classical range") {
    const Scenario s = ksctx::builtin_chsh();
    REQUIRE(fraction_of(s, Rational(-3)) == Rational(1, 2));
    REQUIRE(fraction_of(s, Rational(3)) == Rational(1, 2));
    REQUIRE(fraction_of(s, Rational(0)) == 0);
    REQUIRE(fraction_of(s, Rational(1, 2)) == 0);
    REQUIRE(fraction_of(s, Rational(-2)) == 0);
    Rational previous(-1);
    for (int k = 16; k <= 32; ++k) {
        const Rational f = fraction_of(s, Rational(k, 8));
        REQUIRE(f > previous);  // strictly increasing beyond the classical bound
        previous = f;
    }
}

TEST_CASE("witnesses use the lexicographically smallest optimal support") {
    const Scenario s = ksctx::builtin_chsh();

    const auto classical = ksctx::min_contextual_fraction(s, Rational(2));
    REQUIRE(classical.witness.weights ==
            std::vector<std::pair<std::uint64_t, Rational>>{{0, Rational(1)}});

    const auto tsirelson = ksctx::min_contextual_fraction(s, Rational(707, 250));
    REQUIRE(tsirelson.witness.weights ==
            std::vector<std::pair<std::uint64_t, Rational>>{{0, Rational(293, 500)},
                                                            {1, Rational(207, 500)}});

    const auto algebraic = ksctx::min_contextual_fraction(s, Rational(4));
    REQUIRE(algebraic.witness.weights ==
            std::vector<std::pair<std::uint64_t, Rational>>{{1, Rational(1)}});

    // negative target: the weights still certify the reported optimum
    const auto negative = ksctx::min_contextual_fraction(s, Rational(-3));
    REQUIRE(negative.min_contextual_fraction == Rational(1, 2));
    REQUIRE(ksctx::mixture_functional(s, negative.witness) == Rational(-3));
    REQUIRE(ksctx::mixture_contextual_weight(s, negative.witness) == Rational(1, 2));
}

TEST_CASE("at-least mode relaxes the target downward") {
    const Scenario s = ksctx::builtin_chsh();

    const auto trivial = ksctx::min_contextual_fraction(s, Rational(1), TargetMode::AtLeast);
    REQUIRE(trivial.min_contextual_fraction == 0);
    REQUIRE(trivial.mode == TargetMode::AtLeast);
    REQUIRE(trivial.witness.weights ==
            std::vector<std::pair<std::uint64_t, Rational>>{{0, Rational(1)}});

    // below the attainable minimum is still satisfiable in at-least mode
    REQUIRE(fraction_of(s, Rational(-5), TargetMode::AtLeast) == 0);

    // at and above the classical bound both modes coincide
    for (int k = 16; k <= 32; k += 3) {
        const Rational lambda(k, 8);
        REQUIRE(fraction_of(s, lambda, TargetMode::AtLeast) == fraction_of(s, lambda));
    }

    const auto tsirelson =
        ksctx::min_contextual_fraction(s, Rational(707, 250), TargetMode::AtLeast);
    REQUIRE(tsirelson.min_contextual_fraction == Rational(207, 500));
    REQUIRE(ksctx::mixture_functional(s, tsirelson.witness) == Rational(707, 250));
}

TEST_CASE("unattainable targets are rejected") {
    const Scenario s = ksctx::builtin_chsh();
    REQUIRE_THROWS_AS(ksctx::min_contextual_fraction(s, Rational(9, 2)), ksctx::InfeasibleTarget);
    REQUIRE_THROWS_AS(ksctx::min_contextual_fraction(s, Rational(-9, 2)), ksctx::InfeasibleTarget);
    REQUIRE_THROWS_AS(ksctx::min_contextual_fraction(s, Rational(9, 2), TargetMode::AtLeast),
                      ksctx::InfeasibleTarget);
}

TEST_CASE("closed form covers the full interval and rejects targets beyond it") {
    REQUIRE(ksctx::fraction_closed_form(Rational(0)) == 0);
    REQUIRE(ksctx::fraction_closed_form(Rational(2)) == 0);
    REQUIRE(ksctx::fraction_closed_form(Rational(-2)) == 0);
    REQUIRE(ksctx::fraction_closed_form(Rational(3)) == Rational(1, 2));
    REQUIRE(ksctx::fraction_closed_form(Rational(-3)) == Rational(1, 2));
    REQUIRE(ksctx::fraction_closed_form(Rational(707, 250)) == Rational(207, 500));
    REQUIRE(ksctx::fraction_closed_form(Rational(4)) == 1);
    REQUIRE_THROWS_AS(ksctx::fraction_closed_form(Rational(9, 2)), ksctx::TargetOutOfRange);
    REQUIRE_THROWS_AS(ksctx::fraction_closed_form(Rational(-9, 2)), ksctx::TargetOutOfRange);
}

TEST_CASE("tsirelson stand-in and closed-form decimal are pinned") {
    REQUIRE(ksctx::kTsirelsonApproximation == Rational(707, 250));
    REQUIRE(std::string(ksctx::kTsirelsonClosedFormDecimal) == "0.414213562373");
    // the rational stand-in lands within 3e-4 of the closed-form fraction
    const Rational gap = ksctx::fraction_closed_form(ksctx::kTsirelsonApproximation) -
                         Rational(414213562373LL, 1000000000000LL);
    const Rational magnitude = gap < 0 ? Rational(-gap) : gap;
    REQUIRE(magnitude < Rational(3, 10000));
}

TEST_CASE("mixture statistics evaluate exactly") {
    const Scenario s = ksctx::builtin_chsh();

    const Mixture point254{{{254, Rational(1)}}};
    REQUIRE(ksctx::mixture_functional(s, point254) == 4);
    REQUIRE(ksctx::mixture_contextual_weight(s, point254) == 1);
    REQUIRE(ksctx::average_contextual_per_quantum(s, point254) == 1);

    const Mixture point255{{{255, Rational(1)}}};
    REQUIRE(ksctx::mixture_functional(s, point255) == 2);
    REQUIRE(ksctx::mixture_contextual_weight(s, point255) == 0);
    REQUIRE(ksctx::average_contextual_per_quantum(s, point255) == 0);

    const Mixture uniform{{{0, Rational(1, 4)},
                           {1, Rational(1, 4)},
                           {254, Rational(1, 4)},
                           {255, Rational(1, 4)}}};
    REQUIRE(ksctx::mixture_functional(s, uniform) == 3);
    REQUIRE(ksctx::mixture_contextual_weight(s, uniform) == Rational(1, 2));
    REQUIRE(ksctx::average_contextual_per_quantum(s, uniform) == Rational(1, 2));
}

TEST_CASE("mixture validation rejects malformed weight lists") {
    const Scenario s = ksctx::builtin_chsh();
    const auto invalid = [&](Mixture m) {
        REQUIRE_THROWS_AS(ksctx::validate_mixture(s, m), std::invalid_argument);
    };
    invalid(Mixture{{{256, Rational(1)}}});                                // out of range
    invalid(Mixture{{{3, Rational(1, 2)}, {1, Rational(1, 2)}}});          // not increasing
    invalid(Mixture{{{1, Rational(1, 2)}, {1, Rational(1, 2)}}});          // repeated index
    invalid(Mixture{{{0, Rational(1, 2)}, {1, Rational(1, 4)}}});          // sum below one
    invalid(Mixture{{{0, Rational(1)}, {1, Rational(1)}}});                // sum above one
    invalid(Mixture{{{0, Rational(0)}, {1, Rational(1)}}});                // zero weight
    invalid(Mixture{{{0, Rational(-1, 2)}, {1, Rational(3, 2)}}});         // negative weight
    REQUIRE_NOTHROW(ksctx::validate_mixture(s, Mixture{{{0, Rational(1)}}}));
}

TEST_CASE("state-count statement distinguishes forced breaches from open cases") {
    const auto forced = ksctx::ks_fraction_statement(0);
    REQUIRE(forced.fraction == 1);
    REQUIRE_FALSE(forced.undetermined);

    const auto open = ksctx::ks_fraction_statement(11);
    REQUIRE(open.fraction == 0);
    REQUIRE(open.undetermined);
}

TEST_CASE("ratio strings reduce to smallest integer pairs") {
    REQUIRE(ksctx::ratio_string({Rational(0), Rational(1)}) == "0:1");
    REQUIRE(ksctx::ratio_string({Rational(1), Rational(0)}) == "1:0");
    REQUIRE(ksctx::ratio_string({Rational(207, 500), Rational(293, 500)}) == "207:293");
    REQUIRE(ksctx::ratio_string({Rational(1, 4), Rational(3, 4)}) == "1:3");
    REQUIRE(ksctx::ratio_string({Rational(1, 2), Rational(1, 2)}) == "1:1");
}

TEST_CASE("report text lists target, fraction, ratio and witness") {
    const Scenario s = ksctx::builtin_chsh();

    const auto tsirelson = ksctx::min_contextual_fraction(s, Rational(707, 250));
    REQUIRE(ksctx::report_text(tsirelson) ==
            "lambda=707/250 (2.82800000000)\n"
            "fraction=207/500 (0.414000000000)\n"
            "ratio=207:293\n"
            "witness_support=0:293/500 1:207/500\n");

    const auto classical = ksctx::min_contextual_fraction(s, Rational(2));
    REQUIRE(ksctx::report_text(classical) ==
            "lambda=2/1 (2.00000000000)\n"
            "fraction=0/1 (0)\n"
            "ratio=0:1\n"
            "witness_support=0:1/1\n");

    const auto relaxed = ksctx::min_contextual_fraction(s, Rational(1), TargetMode::AtLeast);
    REQUIRE(ksctx::report_text(relaxed) ==
            "lambda=1/1 (1.00000000000)\n"
            "mode=at-least\n"
            "fraction=0/1 (0)\n"
            "ratio=0:1\n"
            "witness_support=0:1/1\n");
}
