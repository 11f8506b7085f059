#ifndef HYPERCOUNT_BOUNDS_HPP
#define HYPERCOUNT_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "hypercount/combinatorics.hpp"
#include "hypercount/interval.hpp"
#include "hypercount/partition.hpp"
#include "hypercount/path_search.hpp"

namespace hypercount {

// n! / (n_1! ... n_r!)
inline BigInt multinomial(std::size_t n, const std::vector<std::size_t>& sizes) {
    std::size_t sum = 0;
    for (auto s : sizes) sum += s;
    if (sum != n) throw invalid_query("multinomial sizes sum to " + std::to_string(sum) + ", not " + std::to_string(n));
    BigInt out = 1;
    std::size_t placed = 0;
    for (auto s : sizes) {
        placed += s;
        out *= binomial(static_cast<unsigned>(placed), static_cast<unsigned>(s));
    }
    return out;
}

// A counting quantity: a value bracket, a log bracket, or an exact value,
// whichever apply. An exact value always lies in the brackets.
struct CountBound {
    std::optional<Interval> value;
    std::optional<Interval> log_value;
    std::optional<Rational> exact_value;

    // True only if the quantity is at most x whatever its exact value.
    bool certainly_at_most(const Rational& x) const {
        if (exact_value) return *exact_value <= x;
        if (value) return value->hi <= x;
        if (log_value && x > 0) return log_value->hi <= log_bracket(x).lo;
        return false;
    }
};

// log of exp((1 - 1/t) n log n - C n); without t, log of exp(n log n - C n).
inline CountBound theorem_bound(std::size_t n, const Rational& c, std::optional<unsigned> t = std::nullopt,
                                unsigned bits = 64) {
    if (n < 1) throw invalid_query("theorem_bound needs n >= 1");
    if (c < 0) throw invalid_query("theorem_bound needs C >= 0");
    if (t && *t < 1) throw invalid_query("theorem_bound needs t >= 1");
    Rational factor = Rational(n);
    if (t) factor *= Rational(*t - 1, *t);
    CountBound out;
    out.log_value = log_bracket(Rational(n), bits) * factor - c * n;
    return out;
}

// e^{-n} / (2n) * multinomial(n; n_1..n_r).
inline CountBound lower_bound_count(std::size_t n, const SizeVector& sv, unsigned bits = 64) {
    if (n < 1) throw invalid_query("lower_bound_count needs n >= 1");
    const BigInt multi = multinomial(n, sv.sizes);
    CountBound out;
    out.value = exp_neg(static_cast<unsigned>(n), bits) * Rational(multi, BigInt(2 * n));
    return out;
}

// e^{-n} * n^{-n/t} * multinomial(n; n_1..n_r); n^{-n/t} is exact since t | n.
inline CountBound factor_lower_bound(std::size_t n, unsigned t, const SizeVector& sv, unsigned bits = 64) {
    if (t < 1 || n % t != 0) throw divisibility_error("factor_lower_bound needs t | n");
    const BigInt multi = multinomial(n, sv.sizes);
    const BigInt power = pow(BigInt(n), static_cast<unsigned>(n / t));
    CountBound out;
    out.value = exp_neg(static_cast<unsigned>(n), bits) * Rational(multi, power);
    return out;
}

// (n/t)^{n/t}: bound on the number of partitions an F-factor is consistent with.
inline BigInt partition_multiplicity_bound(std::size_t n, unsigned t) {
    if (t < 1 || n % t != 0) throw divisibility_error("partition_multiplicity_bound needs t | n");
    return pow(BigInt(n / t), static_cast<unsigned>(n / t));
}

// Psi_{k,ell}(n, delta): Hamilton ell-cycles of K_n^(k), counted exactly,
// times delta^{n/(k-ell)}.
inline CountBound expected_random_count(std::size_t n, unsigned k, unsigned ell, const Rational& delta,
                                        std::uint64_t budget = kDefaultSearchBudget, unsigned workers = 1) {
    if (delta < 0 || delta > 1) throw invalid_query("delta must lie in [0,1]");
    const auto edges = ell_cycle_edge_count(n, k, ell);
    Rational scale = pow(delta, static_cast<unsigned>(edges));
    CountBound out;
    if (scale == 0) {
        out.exact_value = Rational(0);
    } else {
        const auto cycles = enumerate_hamilton_ell_cycles(Hypergraph::complete(n, k), ell, EnumerationMode::count,
                                                          budget, workers);
        out.exact_value = Rational(cycles.count) * scale;
    }
    out.value = Interval::point(*out.exact_value);
    return out;
}

} // namespace hypercount

#endif // HYPERCOUNT_BOUNDS_HPP
