// Exact rational arithmetic type and formatting helpers shared by all modules.
// No floating point is used anywhere in the library proper; decimals appear
// only as formatted output strings.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace ksctx {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Parses "n", "-n", or "n/d". Throws std::invalid_argument on malformed
/// input or a zero denominator.
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    for (char c : text) {
        if (c != '-' && c != '+' && c != '/' && (c < '0' || c > '9'))
            throw std::invalid_argument("malformed rational literal: " + text);
    }
    try {
        Rational r(text);
        return r;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational literal: " + text);
    }
}

/// Renders as "n/d" with the denominator always explicit ("2" prints "2/1").
inline std::string rational_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

/// Decimal expansion rounded (half away from zero) to `digits` significant
/// digits, without exponent notation. Zero prints as "0".
inline std::string decimal_string(const Rational& r, unsigned digits = 12) {
    if (digits == 0) throw std::invalid_argument("decimal_string: digits must be positive");
    if (r == 0) return "0";

    const bool negative = r < 0;
    Integer num = negative ? Integer(-numerator(r)) : Integer(numerator(r));
    const Integer den = denominator(r);

    auto pow10 = [](unsigned k) {
        Integer p = 1;
        for (unsigned i = 0; i < k; ++i) p *= 10;
        return p;
    };

    // e = floor(log10(num/den)), found by exact comparison.
    long e = static_cast<long>(num.str().size()) - static_cast<long>(den.str().size());
    auto at_least_pow = [&](long k) {
        // num/den >= 10^k ?
        if (k >= 0) return num >= den * pow10(static_cast<unsigned>(k));
        return num * pow10(static_cast<unsigned>(-k)) >= den;
    };
    while (!at_least_pow(e)) --e;
    while (at_least_pow(e + 1)) ++e;

    // Scale so the first significant digit lands in position 10^(digits-1).
    const long shift = static_cast<long>(digits) - 1 - e;
    Integer scaled_num = num, scaled_den = den;
    if (shift >= 0)
        scaled_num *= pow10(static_cast<unsigned>(shift));
    else
        scaled_den *= pow10(static_cast<unsigned>(-shift));
    Integer q = scaled_num / scaled_den;
    const Integer rem = scaled_num % scaled_den;
    if (2 * rem >= scaled_den) ++q;

    std::string s = q.str();
    if (s.size() > digits) {
        // Rounding carried into a new leading digit (e.g. 0.999.. -> 1.00..).
        ++e;
        s = s.substr(0, digits);
    }

    std::string out;
    if (e >= 0) {
        const std::size_t int_len = static_cast<std::size_t>(e) + 1;
        if (int_len >= s.size()) {
            out = s + std::string(int_len - s.size(), '0');
        } else {
            out = s.substr(0, int_len) + "." + s.substr(int_len);
        }
    } else {
        out = "0." + std::string(static_cast<std::size_t>(-e) - 1, '0') + s;
    }
    return negative ? "-" + out : out;
}

/// "n/d (decimal)" — the report/CLI convention for rational values.
inline std::string rational_with_decimal(const Rational& r, unsigned digits = 12) {
    return rational_string(r) + " (" + decimal_string(r, digits) + ")";
}

/// floor(r) as an Integer.
inline Integer rational_floor(const Rational& r) {
    Integer q = numerator(r) / denominator(r);
    if (r < 0 && q * denominator(r) != numerator(r)) --q;
    return q;
}

}  // namespace ksctx
