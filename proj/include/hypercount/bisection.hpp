#ifndef HYPERCOUNT_BISECTION_HPP
#define HYPERCOUNT_BISECTION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <optional>
#include <vector>

#include "hypercount/io.hpp"
#include "hypercount/parallel.hpp"
#include "hypercount/partition.hpp"
#include "hypercount/rng.hpp"
#include "hypercount/thresholds.hpp"

namespace hypercount {

// floor(N^(1/q)) for N >= 0.
inline BigInt integer_root(const BigInt& n, unsigned q) {
    if (n < 0) throw invalid_query("integer_root of a negative number");
    if (n < 2 || q == 1) return n;
    BigInt lo = 1;
    BigInt hi = BigInt(1) << (boost::multiprecision::msb(n) / q + 1);
    while (lo < hi) {
        BigInt mid = (lo + hi + 1) >> 1;
        BigInt p = 1;
        for (unsigned i = 0; i < q; ++i) p *= mid;
        if (p <= n) lo = mid;
        else hi = mid - 1;
    }
    return lo;
}

// The block events use thresholds (delta + gamma - 2 m^(-1/q)) m with q = 4
// for E_{i,j} and q = 3 for the refinement events F_{i-1,j}.
inline constexpr unsigned kEventRoot = 4;
inline constexpr unsigned kRefinementRoot = 3;

namespace detail {

// d >= level*m - 2 m^((q-1)/q), decided exactly: with x = level*m - d the
// event holds iff x <= 0 or x^q <= 2^q m^(q-1).
inline bool event_holds(std::size_t d, std::size_t m, const Rational& level, unsigned q) {
    const Rational x = level * m - d;
    if (x <= 0) return true;
    return pow(x, q) <= Rational(pow(BigInt(2), q) * pow(BigInt(m), q - 1));
}

// Threshold clamps to 0 iff level*m <= 2 m^((q-1)/q).
inline bool threshold_clamped(std::size_t m, const Rational& level, unsigned q) { return event_holds(0, m, level, q); }

} // namespace detail

struct ThresholdBracket {
    Rational lower;
    Rational upper;
    bool clamped = false;
    bool exact() const { return lower == upper; }
};

// max(0, (delta + gamma - 2 m^(-1/q)) m) enclosed in [lower, upper], with
// m^((q-1)/q) bracketed by an integer root at `bits` fractional bits.
inline ThresholdBracket event_threshold(const Rational& delta, const Rational& gamma, std::size_t m,
                                        unsigned bits = 64, unsigned q = kEventRoot) {
    if (m < 1) throw invalid_query("block size must be positive");
    if (q < 2) throw invalid_query("root must be at least 2");
    const Rational level = delta + gamma;
    ThresholdBracket out;
    out.clamped = detail::threshold_clamped(m, level, q);
    if (out.clamped) return out;
    const BigInt scaled = pow(BigInt(m), q - 1) << (bits * q);
    const BigInt root = integer_root(scaled, q);
    const Rational unit(BigInt(1), BigInt(1) << bits);
    const bool exact = pow(root, q) == scaled;
    const Rational base = level * m;
    out.upper = base - 2 * Rational(root) * unit;
    out.lower = exact ? out.upper : base - 2 * Rational(root + 1) * unit;
    if (out.lower < 0) out.lower = 0;
    return out;
}

struct BlockOutcome {
    std::vector<Vertex> vertices;
    std::size_t size = 0;                  // m_{i,j}
    std::optional<std::size_t> min_degree; // min over U of d(U, V_{i,j}); empty if there is no U
    bool event = false;                    // E_{i,j}
    bool clamped = false;                  // threshold clamped to 0, so E_{i,j} is vacuous
};

struct RefinementOutcome {
    bool holds = false;   // F_{i-1,j}
    bool clamped = false; // either child's threshold clamped
};

struct BisectionTrace {
    unsigned s = 0;
    std::vector<std::vector<BlockOutcome>> levels;           // levels[i][j-1], i = 0..s
    std::vector<std::vector<RefinementOutcome>> refinements; // refinements[i-1][j-1], i = 1..s

    bool level_holds(unsigned i) const {
        return std::all_of(levels[i].begin(), levels[i].end(), [](const BlockOutcome& b) { return b.event; });
    }
};

struct BisectionResult {
    Partition partition;
    BisectionTrace trace;
};

namespace detail {

// m_{i,j} for j = 1..2^i: sums of 2^(s-i) consecutive leaf sizes.
inline std::vector<std::size_t> level_sizes(const SizeVector& sv, unsigned i) {
    const unsigned s = sv.levels();
    const std::size_t width = std::size_t{1} << (s - i);
    std::vector<std::size_t> out(std::size_t{1} << i, 0);
    for (std::size_t leaf = 0; leaf < sv.sizes.size(); ++leaf) out[leaf / width] += sv.sizes[leaf];
    return out;
}

// Minimum of d(U, target) over (k-1)-sets U inside `within`.
inline std::optional<std::size_t> min_degree_into(const Hypergraph& h, std::span<const Vertex> within,
                                                  const VertexSet& target) {
    std::optional<std::size_t> best;
    for_each_combination(within, h.k() - 1, [&](std::span<const Vertex> u) {
        const std::size_t d = degree_into(h, u, target);
        if (!best || d < *best) best = d;
        return *best > 0;
    });
    return best;
}

inline void evaluate_level(const Hypergraph& h, const Rational& level, std::vector<BlockOutcome>& blocks) {
    std::vector<std::vector<Vertex>> sets;
    for (const auto& b : blocks) sets.push_back(b.vertices);
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        auto& b = blocks[j];
        const auto w = neighbourhood_union(sets, j);
        b.min_degree = min_degree_into(h, w, VertexSet::of(h.n(), b.vertices));
        b.clamped = threshold_clamped(b.size, level, kEventRoot);
        b.event = !b.min_degree || event_holds(*b.min_degree, b.size, level, kEventRoot);
    }
}

inline RefinementOutcome evaluate_refinement(const Hypergraph& h, const Rational& level,
                                             const std::vector<std::vector<Vertex>>& parents, std::size_t j,
                                             const BlockOutcome& left, const BlockOutcome& right) {
    RefinementOutcome out;
    const auto w = neighbourhood_union(parents, j);
    out.holds = true;
    for (const auto* child : {&left, &right}) {
        out.clamped = out.clamped || threshold_clamped(child->size, level, kRefinementRoot);
        auto d = min_degree_into(h, w, VertexSet::of(h.n(), child->vertices));
        if (d && !event_holds(*d, child->size, level, kRefinementRoot)) out.holds = false;
    }
    return out;
}

} // namespace detail

// Splits V(H) in s rounds: every block V_{i-1,j} is shuffled and cut into
// V_{i,2j-1}, V_{i,2j} of the prescribed sizes. Every E_{i,j} and F_{i-1,j}
// is evaluated along the way. All draws come from one generator seeded with
// `seed`, consumed in (level, block) order.
inline BisectionResult random_bisection(const Hypergraph& h, const SizeVector& sv, const GoodnessSpec& spec,
                                        std::uint64_t seed) {
    spec.validate();
    if (sv.total() != h.n())
        throw construction_error("size vector sums to " + std::to_string(sv.total()) + ", host has " +
                                 std::to_string(h.n()) + " vertices");
    const auto r = sv.sizes.size();
    if (r == 0 || (r & (r - 1)) != 0) throw construction_error("number of blocks must be a power of two");
    const Rational level = spec.delta + spec.gamma;
    const unsigned s = sv.levels();
    Rng rng(seed);

    BisectionResult out;
    auto& trace = out.trace;
    trace.s = s;
    trace.levels.resize(s + 1);
    trace.refinements.resize(s);
    trace.levels[0].push_back(BlockOutcome{iota_vertices(h.n()), h.n(), std::nullopt, false, false});
    detail::evaluate_level(h, level, trace.levels[0]);

    for (unsigned i = 1; i <= s; ++i) {
        const auto sizes = detail::level_sizes(sv, i);
        const auto& parents = trace.levels[i - 1];
        auto& children = trace.levels[i];
        for (std::size_t j = 0; j < parents.size(); ++j) {
            std::vector<Vertex> pool = parents[j].vertices;
            shuffle_in_place(pool, rng);
            const auto cut = static_cast<std::ptrdiff_t>(sizes[2 * j]);
            std::vector<Vertex> left(pool.begin(), pool.begin() + cut), right(pool.begin() + cut, pool.end());
            std::sort(left.begin(), left.end());
            std::sort(right.begin(), right.end());
            children.push_back(BlockOutcome{std::move(left), sizes[2 * j], std::nullopt, false, false});
            children.push_back(BlockOutcome{std::move(right), sizes[2 * j + 1], std::nullopt, false, false});
        }
        detail::evaluate_level(h, level, children);
        std::vector<std::vector<Vertex>> parent_sets;
        for (const auto& b : parents) parent_sets.push_back(b.vertices);
        for (std::size_t j = 0; j < parents.size(); ++j)
            trace.refinements[i - 1].push_back(
                detail::evaluate_refinement(h, level, parent_sets, j, children[2 * j], children[2 * j + 1]));
    }
    for (const auto& b : trace.levels[s]) out.partition.blocks.push_back(b.vertices);
    return out;
}

// Per trace: F_{i-1,j} => E_{i,2j-1} and E_{i,2j} wherever F holds, and
// leaf sizes equal to the size vector.
inline bool trace_is_consistent(const BisectionTrace& trace, const SizeVector& sv) {
    for (unsigned i = 1; i <= trace.s; ++i) {
        for (std::size_t j = 0; j < trace.refinements[i - 1].size(); ++j) {
            if (trace.refinements[i - 1][j].holds &&
                !(trace.levels[i][2 * j].event && trace.levels[i][2 * j + 1].event))
                return false;
        }
        for (std::size_t j = 0; j < trace.levels[i - 1].size(); ++j)
            if (trace.levels[i - 1][j].size != trace.levels[i][2 * j].size + trace.levels[i][2 * j + 1].size)
                return false;
    }
    const auto& leaves = trace.levels[trace.s];
    if (leaves.size() != sv.sizes.size()) return false;
    for (std::size_t j = 0; j < leaves.size(); ++j)
        if (leaves[j].vertices.size() != sv.sizes[j] || leaves[j].size != sv.sizes[j]) return false;
    return true;
}

struct WilsonInterval {
    double lower = 0;
    double upper = 1;
};

// 95% Wilson score interval for `successes` out of `trials`.
inline WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054) {
    if (trials == 0) return {};
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1 + z2 / n;
    const double centre = (p + z2 / (2 * n)) / denom;
    const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

struct LevelFrequency {
    unsigned level = 0;                // i
    std::size_t given = 0;             // trials with E_{i-1}
    std::size_t both = 0;              // trials with E_{i-1} and E_i
    std::optional<double> frequency;   // both / given
    double claimed_lower_bound = 0;    // exp(-r_{i-1})
};

struct GoodProbabilityEstimate {
    std::size_t trials = 0;
    std::size_t good = 0;
    double fraction = 0;
    WilsonInterval interval;
    std::vector<LevelFrequency> levels;
    std::size_t inconsistent_traces = 0;
};

// Fraction of random bisections whose leaf partition is (n, delta + gamma/2)-good.
// Trial t uses seed derive_seed(seed, "bisection", t), so the result does
// not depend on `workers`.
inline GoodProbabilityEstimate estimate_good_probability(const Hypergraph& h, const SizeVector& sv,
                                                         const GoodnessSpec& spec, std::size_t trials,
                                                         std::uint64_t seed, unsigned workers = 1) {
    if (trials < 1) throw invalid_query("trials must be at least 1");
    spec.validate();
    const Rational target = spec.delta + spec.gamma / 2;
    struct TrialOut {
        bool good = false;
        bool consistent = true;
        std::vector<char> level_events;
    };
    std::vector<TrialOut> outs(trials);
    auto run_trial = [&](std::size_t t) {
        auto res = random_bisection(h, sv, spec, derive_seed(seed, "bisection", t));
        auto& o = outs[t];
        o.good = check_good(h, res.partition, target, sv, 0).good();
        o.consistent = trace_is_consistent(res.trace, sv);
        for (unsigned i = 0; i <= res.trace.s; ++i) o.level_events.push_back(res.trace.level_holds(i));
    };
    parallel_for(trials, workers, run_trial);

    GoodProbabilityEstimate est;
    est.trials = trials;
    const unsigned s = sv.levels();
    for (unsigned i = 1; i <= s; ++i)
        est.levels.push_back(LevelFrequency{i, 0, 0, std::nullopt, std::exp(-std::ldexp(1.0, static_cast<int>(i) - 1))});
    for (const auto& o : outs) {
        est.good += o.good;
        est.inconsistent_traces += !o.consistent;
        for (unsigned i = 1; i <= s; ++i) {
            if (!o.level_events[i - 1]) continue;
            ++est.levels[i - 1].given;
            est.levels[i - 1].both += o.level_events[i];
        }
    }
    for (auto& l : est.levels)
        if (l.given) l.frequency = static_cast<double>(l.both) / static_cast<double>(l.given);
    est.fraction = static_cast<double>(est.good) / static_cast<double>(trials);
    est.interval = wilson_interval(est.good, trials);
    return est;
}

inline json to_json(const BisectionTrace& trace) {
    json levels = json::array();
    for (std::size_t i = 0; i < trace.levels.size(); ++i) {
        json blocks = json::array();
        for (std::size_t j = 0; j < trace.levels[i].size(); ++j) {
            const auto& b = trace.levels[i][j];
            json jb{{"j", j + 1}, {"size", b.size}, {"event", b.event}, {"clamped", b.clamped}};
            jb["min_degree"] = b.min_degree ? json(*b.min_degree) : json(nullptr);
            if (i > 0) {
                const auto& f = trace.refinements[i - 1][j / 2];
                jb["parent_refinement"] = f.holds;
            }
            jb["vertices"] = b.vertices;
            blocks.push_back(std::move(jb));
        }
        levels.push_back(json{{"i", i}, {"event", trace.level_holds(static_cast<unsigned>(i))}, {"blocks", blocks}});
    }
    json refinements = json::array();
    for (std::size_t i = 0; i < trace.refinements.size(); ++i)
        for (std::size_t j = 0; j < trace.refinements[i].size(); ++j)
            refinements.push_back(json{{"parent_level", i}, {"j", j + 1}, {"holds", trace.refinements[i][j].holds},
                                       {"clamped", trace.refinements[i][j].clamped}});
    return json{{"s", trace.s}, {"levels", levels}, {"refinements", refinements}};
}

} // namespace hypercount

#endif // HYPERCOUNT_BISECTION_HPP
