#ifndef HYPERCOUNT_COMBINATORICS_HPP
#define HYPERCOUNT_COMBINATORICS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <type_traits>
#include <vector>

#include "hypercount/rational.hpp"

namespace hypercount {

using Vertex = std::uint32_t;

inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

// C(n, j), saturating at kSaturated.
inline std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t j) {
    if (j > n) return 0;
    j = std::min(j, n - j);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 1; i <= j; ++i) {
        acc = acc * (n - j + i) / i;
        if (acc > kSaturated) return kSaturated;
    }
    return static_cast<std::uint64_t>(acc);
}

inline BigInt binomial(unsigned n, unsigned j) {
    if (j > n) return 0;
    BigInt acc = 1;
    for (unsigned i = 1; i <= j; ++i) {
        acc *= n - j + i;
        acc /= i;
    }
    return acc;
}

inline BigInt factorial(unsigned n) {
    BigInt acc = 1;
    for (unsigned i = 2; i <= n; ++i) acc *= i;
    return acc;
}

namespace detail {
template <class F, class Arg>
bool invoke_continue(F& f, Arg&& arg) {
    if constexpr (std::is_void_v<std::invoke_result_t<F&, Arg>>) {
        f(std::forward<Arg>(arg));
        return true;
    } else {
        return static_cast<bool>(f(std::forward<Arg>(arg)));
    }
}
} // namespace detail

// Calls f on every j-element sub-sequence of pool, in lexicographic order of
// positions. f may return false to stop early; returns false if stopped.
template <class F>
bool for_each_combination(std::span<const Vertex> pool, std::size_t j, F&& f) {
    if (j > pool.size()) return true;
    std::vector<std::size_t> idx(j);
    std::vector<Vertex> chosen(j);
    for (std::size_t i = 0; i < j; ++i) idx[i] = i;
    while (true) {
        for (std::size_t i = 0; i < j; ++i) chosen[i] = pool[idx[i]];
        if (!detail::invoke_continue(f, std::span<const Vertex>(chosen))) return false;
        std::size_t i = j;
        while (i > 0 && idx[i - 1] == pool.size() - j + i - 1) --i;
        if (i == 0) return true;
        ++idx[i - 1];
        for (std::size_t t = i; t < j; ++t) idx[t] = idx[t - 1] + 1;
    }
}

// Calls f on every ordered j-tuple of distinct elements of pool.
template <class F>
bool for_each_arrangement(std::span<const Vertex> pool, std::size_t j, F&& f) {
    if (j > pool.size()) return true;
    std::vector<Vertex> tuple;
    std::vector<char> used(pool.size(), 0);
    tuple.reserve(j);
    auto rec = [&](auto&& self) -> bool {
        if (tuple.size() == j) return detail::invoke_continue(f, std::span<const Vertex>(tuple));
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (used[i]) continue;
            used[i] = 1;
            tuple.push_back(pool[i]);
            bool go_on = self(self);
            tuple.pop_back();
            used[i] = 0;
            if (!go_on) return false;
        }
        return true;
    };
    return rec(rec);
}

inline std::vector<Vertex> iota_vertices(std::size_t n) {
    std::vector<Vertex> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Vertex>(i);
    return v;
}

} // namespace hypercount

#endif // HYPERCOUNT_COMBINATORICS_HPP
