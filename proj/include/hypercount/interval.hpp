#ifndef HYPERCOUNT_INTERVAL_HPP
#define HYPERCOUNT_INTERVAL_HPP

#include <algorithm>
#include <optional>
#include <string>

#include "hypercount/rational.hpp"

namespace hypercount {

// Closed rational interval [lo, hi].
struct Interval {
    Rational lo;
    Rational hi;

    static Interval point(const Rational& v) { return {v, v}; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / 2; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

inline Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
inline Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
inline Interval operator+(const Interval& a, const Rational& c) { return {a.lo + c, a.hi + c}; }
inline Interval operator-(const Interval& a, const Rational& c) { return {a.lo - c, a.hi - c}; }

inline Interval operator*(const Interval& a, const Rational& c) {
    if (c >= 0) return {a.lo * c, a.hi * c};
    return {a.hi * c, a.lo * c};
}
inline Interval operator*(const Rational& c, const Interval& a) { return a * c; }

inline Interval operator*(const Interval& a, const Interval& b) {
    const Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

// 1/x for an interval not containing 0.
inline Interval reciprocal(const Interval& a) {
    if (a.contains(Rational(0))) throw invalid_query("reciprocal of an interval containing 0");
    return {1 / a.hi, 1 / a.lo};
}

namespace detail {

inline BigInt floor_scaled(const Rational& x, unsigned bits) { return floor_of(x * Rational(BigInt(1) << bits)); }

// The dyadic cell [j/2^bits, (j+1)/2^bits] holding every point of `inner`,
// or nullopt if `inner` straddles a grid point. Cells at more bits nest
// inside cells at fewer bits, so brackets only tighten as precision grows.
inline std::optional<Interval> dyadic_cell(const Interval& inner, unsigned bits) {
    const BigInt a = floor_scaled(inner.lo, bits);
    const BigInt b = floor_scaled(inner.hi, bits);
    if (a != b) return std::nullopt;
    const BigInt scale = BigInt(1) << bits;
    if (Rational(a, scale) == inner.lo && inner.lo == inner.hi) return inner;
    return Interval{Rational(a, scale), Rational(a + 1, scale)};
}

// Refines `inner_at(J)` for growing J until it fits one dyadic cell.
template <class F>
Interval bracket_by_cells(F&& inner_at, unsigned bits, unsigned start) {
    for (unsigned terms = start;; terms += terms / 2 + 8) {
        Interval inner = inner_at(terms);
        if (inner.lo == inner.hi) return inner;
        if (auto cell = dyadic_cell(inner, bits)) return *cell;
        if (terms > 200000) throw error("interval refinement did not converge");
    }
}

// e^x for rational x >= 0 enclosed using `terms` series terms plus a tail
// bound: for J > x, sum_{j>=J} x^j/j! <= x^J/J! * (J+1)/(J+1-x).
inline Interval exp_series(const Rational& x, unsigned terms) {
    Rational sum = 0, term = 1;
    unsigned j = 0;
    for (; j < terms; ++j) {
        sum += term;
        term = term * x / (j + 1);
    }
    while (Rational(j + 1) <= x) {
        sum += term;
        term = term * x / (j + 1);
        ++j;
    }
    const Rational tail = term * Rational(j + 1) / (Rational(j + 1) - x);
    return {sum, sum + tail};
}

// atanh(z) for 0 <= z < 1 with `terms` terms; tail <= z^(2J+1) / ((2J+1)(1-z^2)).
inline Interval atanh_series(const Rational& z, unsigned terms) {
    Rational sum = 0, power = z;
    const Rational z2 = z * z;
    for (unsigned j = 0; j < terms; ++j) {
        sum += power / (2 * j + 1);
        power *= z2;
    }
    const Rational tail = power / (Rational(2 * terms + 1) * (1 - z2));
    return {sum, sum + tail};
}

} // namespace detail

// e^{-n} in a dyadic cell of width 2^-bits (exactly 1 for n = 0).
inline Interval exp_neg(unsigned n, unsigned bits = 64) {
    if (n == 0) return Interval::point(1);
    return detail::bracket_by_cells([&](unsigned terms) { return reciprocal(detail::exp_series(n, terms)); }, bits,
                                    2 * n + bits);
}

// e^x for rational x, any sign.
inline Interval exp_bracket(const Rational& x, unsigned bits = 64) {
    if (x == 0) return Interval::point(1);
    if (x > 0) return detail::bracket_by_cells([&](unsigned terms) { return detail::exp_series(x, terms); }, bits, 16);
    return detail::bracket_by_cells([&](unsigned terms) { return reciprocal(detail::exp_series(-x, terms)); }, bits, 16);
}

// log x for rational x > 0: x = 2^a y with y in [1, 2), and
// log y = 2 atanh((y-1)/(y+1)), log 2 = 2 atanh(1/3).
inline Interval log_bracket(const Rational& x, unsigned bits = 64) {
    if (x <= 0) throw invalid_query("log of a non-positive number");
    if (x == 1) return Interval::point(0);
    const BigInt num = numerator_of(x), den = denominator_of(x);
    long a = static_cast<long>(boost::multiprecision::msb(num)) - static_cast<long>(boost::multiprecision::msb(den));
    Rational y = x;
    if (a > 0) y /= Rational(BigInt(1) << a);
    if (a < 0) y *= Rational(BigInt(1) << -a);
    if (y < 1) {
        y *= 2;
        --a;
    }
    const Rational z = (y - 1) / (y + 1);
    return detail::bracket_by_cells(
        [&](unsigned terms) {
            Interval log2 = detail::atanh_series(Rational(1, 3), terms) * Rational(2);
            Interval logy = detail::atanh_series(z, terms) * Rational(2);
            return log2 * Rational(a) + logy;
        },
        bits, bits / 2 + 8);
}

inline std::string to_string(const Interval& i) { return "[" + to_string(i.lo) + ", " + to_string(i.hi) + "]"; }

} // namespace hypercount

#endif // HYPERCOUNT_INTERVAL_HPP
