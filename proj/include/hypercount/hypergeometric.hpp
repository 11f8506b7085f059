#ifndef HYPERCOUNT_HYPERGEOMETRIC_HPP
#define HYPERCOUNT_HYPERGEOMETRIC_HPP

#include <cmath>
#include <cstdint>

#include "hypercount/error.hpp"
#include "hypercount/rng.hpp"

namespace hypercount {

// X counts successes among n draws without replacement from N items, m of
// which are successes; t is the deviation in P(|X - EX| >= t).
struct HypergeometricParams {
    std::uint64_t N = 0;
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    double t = 1;

    void validate() const {
        if (m > N || n > N) throw invalid_query("hypergeometric parameters need m, n <= N");
        if (!(t > 0)) throw invalid_query("deviation t must be positive");
    }
    double mean() const { return N == 0 ? 0.0 : static_cast<double>(n) * static_cast<double>(m) / static_cast<double>(N); }
};

// 2 exp(-2 t^2 / n).
inline double hypergeometric_tail_bound(const HypergeometricParams& p) {
    p.validate();
    if (p.n == 0) throw invalid_query("tail bound needs at least one draw");
    return 2.0 * std::exp(-2.0 * p.t * p.t / static_cast<double>(p.n));
}

// One draw of X, sampling the n items one at a time.
inline std::uint64_t sample_hypergeometric(const HypergeometricParams& p, Rng& rng) {
    std::uint64_t left = p.N, good = p.m, hits = 0;
    for (std::uint64_t i = 0; i < p.n; ++i, --left) {
        if (uniform_below(rng, left) < good) {
            ++hits;
            --good;
        }
    }
    return hits;
}

struct TailEstimate {
    std::uint64_t draws = 0;
    std::uint64_t exceed = 0; // draws with |X - EX| >= t
    double frequency = 0;
    double bound = 0;
};

inline TailEstimate estimate_tail(const HypergeometricParams& p, std::uint64_t draws, std::uint64_t seed) {
    p.validate();
    Rng rng(seed);
    TailEstimate out{draws, 0, 0, hypergeometric_tail_bound(p)};
    // |X - nm/N| >= t  <=>  |N X - n m| >= N t
    const double scaled_t = p.t * static_cast<double>(p.N);
    const auto nm = static_cast<double>(p.n * p.m);
    for (std::uint64_t i = 0; i < draws; ++i) {
        const auto x = static_cast<double>(sample_hypergeometric(p, rng) * p.N);
        if (std::fabs(x - nm) >= scaled_t) ++out.exceed;
    }
    out.frequency = draws ? static_cast<double>(out.exceed) / static_cast<double>(draws) : 0.0;
    return out;
}

} // namespace hypercount

#endif // HYPERCOUNT_HYPERGEOMETRIC_HPP
