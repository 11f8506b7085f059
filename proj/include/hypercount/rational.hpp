#ifndef HYPERCOUNT_RATIONAL_HPP
#define HYPERCOUNT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "hypercount/error.hpp"

namespace hypercount {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) throw invalid_query("rational with zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

// floor(q) for any sign.
inline BigInt floor_of(const Rational& q) {
    BigInt num = numerator_of(q), den = denominator_of(q);
    BigInt quot = num / den;
    if (num < 0 && quot * den != num) quot -= 1;
    return quot;
}

inline BigInt ceil_of(const Rational& q) { return -floor_of(-q); }

inline Rational pow(const Rational& base, unsigned exponent) {
    Rational result = 1;
    for (unsigned i = 0; i < exponent; ++i) result *= base;
    return result;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// "p/q", or "p" for integers.
inline std::string to_string(const Rational& q) {
    if (denominator_of(q) == 1) return numerator_of(q).str();
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

inline std::string to_string(const BigInt& z) { return z.str(); }

// Parses "3", "-3/4", "0.95" or "2.5e-3" into an exact rational.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&]() -> Rational {
        throw invalid_query("cannot parse rational '" + std::string(text) + "'");
    };
    // cpp_int takes a leading 0 as an octal prefix
    auto decimal = [](std::string_view d) {
        const auto nz = d.find_first_not_of('0');
        return nz == std::string_view::npos ? BigInt(0) : BigInt(std::string(d.substr(nz)));
    };
    auto parse_int = [&](std::string_view s) -> BigInt {
        if (s.empty()) fail();
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) fail();
        for (std::size_t j = i; j < s.size(); ++j)
            if (!std::isdigit(static_cast<unsigned char>(s[j]))) fail();
        BigInt v = decimal(s.substr(i));
        return s[0] == '-' ? BigInt(-v) : v;
    };

    if (text.empty()) fail();
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt den = parse_int(text.substr(slash + 1));
        if (den == 0) fail();
        return Rational(parse_int(text.substr(0, slash)), den);
    }

    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = text.substr(0, e);
        BigInt ex = parse_int(text.substr(e + 1));
        if (ex > 4096 || ex < -4096) fail();
        exponent = ex.convert_to<long>();
    }
    bool negative = !mantissa.empty() && mantissa[0] == '-';
    if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) mantissa.remove_prefix(1);
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false;
    for (char c : mantissa) {
        if (c == '.') {
            if (seen_point) fail();
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_point) ++frac_digits;
        } else {
            fail();
        }
    }
    if (digits.empty()) fail();
    Rational value{decimal(digits)};
    long shift = exponent - frac_digits;
    BigInt ten_pow = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(shift < 0 ? -shift : shift));
    value = shift < 0 ? value / Rational(ten_pow) : value * Rational(ten_pow);
    return negative ? Rational(-value) : value;
}

} // namespace hypercount

#endif // HYPERCOUNT_RATIONAL_HPP
