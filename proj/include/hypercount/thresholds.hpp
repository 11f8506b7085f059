#ifndef HYPERCOUNT_THRESHOLDS_HPP
#define HYPERCOUNT_THRESHOLDS_HPP

#include "hypercount/combinatorics.hpp"
#include "hypercount/hypergraph.hpp"
#include "hypercount/rational.hpp"

namespace hypercount {

// Codegree fraction above which Hamilton ell-cycles are guaranteed:
// 1/2 if (k-ell) | k, otherwise 1 / (ceil(k/(k-ell)) * (k-ell)).
inline Rational dirac_threshold(unsigned k, unsigned ell) {
    if (k < 2) throw invalid_query("dirac_threshold needs k >= 2");
    if (ell < 1 || ell >= k) throw invalid_query("dirac_threshold needs 1 <= ell <= k-1");
    const unsigned step = k - ell;
    if (k % step == 0) return Rational(1, 2);
    const unsigned blocks = (k + step - 1) / step;
    return Rational(BigInt(1), BigInt(blocks * step));
}

// Codegree fraction 1 - 1/(C(t-1,k-1) + C(t-2,k-2)) sufficient for the
// (t-k+1)-th power of a Hamilton tight cycle.
inline Rational clique_power_threshold(unsigned k, unsigned t) {
    if (k < 2 || t < k) throw invalid_query("clique_power_threshold needs t >= k >= 2");
    BigInt denom = binomial(t - 1, k - 1) + binomial(t - 2, k - 2);
    return Rational(1) - Rational(BigInt(1), denom);
}

// delta(H) >= fraction * n, compared exactly.
inline bool meets_codegree_fraction(const Hypergraph& h, const Rational& fraction) {
    return Rational(min_codegree(h)) >= fraction * h.n();
}

// Codegree fraction delta and slack gamma.
struct GoodnessSpec {
    Rational delta;
    Rational gamma;

    void validate() const {
        if (delta < 0 || delta > 1) throw invalid_query("delta must lie in [0,1]");
        if (gamma <= 0 || gamma >= 1) throw invalid_query("gamma must lie in (0,1)");
        if (delta + gamma > 1) throw invalid_query("delta + gamma must be at most 1");
    }
};

} // namespace hypercount

#endif // HYPERCOUNT_THRESHOLDS_HPP
