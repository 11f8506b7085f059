#ifndef HYPERCOUNT_PARTITION_HPP
#define HYPERCOUNT_PARTITION_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hypercount/hypergraph.hpp"
#include "hypercount/rational.hpp"

namespace hypercount {

// Block sizes (n_1, ..., n_r) for a random partition.
struct SizeVector {
    std::vector<std::size_t> sizes;
    std::size_t m = 1;
    std::size_t divisor = 1;
    unsigned k = 2;

    std::size_t total() const {
        std::size_t t = 0;
        for (auto s : sizes) t += s;
        return t;
    }
    std::size_t blocks() const { return sizes.size(); }
    // log2(r)
    unsigned levels() const {
        unsigned s = 0;
        while ((std::size_t{1} << s) < sizes.size()) ++s;
        return s;
    }
};

// First violated size-vector invariant, or nullopt.
inline std::optional<std::string> size_vector_violation(const SizeVector& sv) {
    const auto r = sv.sizes.size();
    if (r == 0 || (r & (r - 1)) != 0) return "number of blocks r=" + std::to_string(r) + " is not a power of two";
    const auto [lo, hi] = std::minmax_element(sv.sizes.begin(), sv.sizes.end());
    if (*lo < sv.m) return "block size " + std::to_string(*lo) + " below m=" + std::to_string(sv.m);
    if (*hi > 5 * sv.m) return "block size " + std::to_string(*hi) + " above 5m=" + std::to_string(5 * sv.m);
    if (*hi - *lo > 2 * std::size_t{sv.k})
        return "block sizes differ by " + std::to_string(*hi - *lo) + " > 2k=" + std::to_string(2 * sv.k);
    for (auto s : sv.sizes)
        if (s % sv.divisor != 0)
            return "block size " + std::to_string(s) + " not divisible by " + std::to_string(sv.divisor);
    return std::nullopt;
}

// r = 2^s blocks with 2m <= n/2^s < 4m; sizes are multiples of `divisor`
// within one divisor of n/r, the larger ones spread evenly.
inline SizeVector size_vector(std::size_t n, std::size_t m, std::size_t divisor, unsigned k) {
    if (m == 0) throw construction_error("m must be positive");
    if (divisor == 0) throw construction_error("divisor must be positive");
    if (k < 2) throw construction_error("k must be at least 2");
    if (n % divisor != 0)
        throw construction_error("divisor " + std::to_string(divisor) + " does not divide n=" + std::to_string(n));
    if (n < 2 * m) throw construction_error("no s with 2m <= n/2^s < 4m: n < 2m");
    unsigned s = 0;
    while (n >= 4 * m * (std::size_t{1} << s)) ++s;
    const std::size_t r = std::size_t{1} << s;
    const std::size_t units = n / divisor;
    const std::size_t base = units / r;
    const std::size_t extra = units % r;
    SizeVector sv{{}, m, divisor, k};
    sv.sizes.reserve(r);
    for (std::size_t i = 0; i < r; ++i) {
        const bool bigger = (i + 1) * extra / r > i * extra / r;
        sv.sizes.push_back((base + (bigger ? 1 : 0)) * divisor);
    }
    if (auto why = size_vector_violation(sv)) throw construction_error("infeasible size vector: " + *why);
    return sv;
}

// Ordered vertex partition (V_1, ..., V_r); blocks are kept sorted.
struct Partition {
    std::vector<std::vector<Vertex>> blocks;

    std::vector<std::size_t> sizes() const {
        std::vector<std::size_t> out;
        for (const auto& b : blocks) out.push_back(b.size());
        return out;
    }
    friend bool operator==(const Partition&, const Partition&) = default;
};

// Throws invalid_query unless the blocks partition V(H) exactly.
inline void require_partition(const Hypergraph& h, const Partition& p) {
    std::vector<char> seen(h.n(), 0);
    std::size_t covered = 0;
    for (const auto& b : p.blocks) {
        for (Vertex v : b) {
            if (v >= h.n()) throw invalid_query("partition vertex " + std::to_string(v) + " outside V(H)");
            if (seen[v]) throw invalid_query("vertex " + std::to_string(v) + " in two blocks");
            seen[v] = 1;
            ++covered;
        }
    }
    if (covered != h.n()) throw invalid_query("partition does not cover V(H)");
}

inline Partition sorted_partition(std::vector<std::vector<Vertex>> blocks) {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    return Partition{std::move(blocks)};
}

struct Violation {
    std::size_t block = 0;      // 0-based
    std::vector<Vertex> set;    // U for codegree goodness, a minimum d-set for factor goodness
    std::size_t degree = 0;
};

struct GoodnessReport {
    bool sizes_ok = true;
    bool degrees_ok = true;
    std::vector<Violation> violations; // first `cap` only
    std::size_t violation_count = 0;
    std::optional<Rational> min_ratio; // min of d / |V_i| (or delta_d / C(n_i, k-d)); empty if nothing was checked

    bool good() const { return sizes_ok && degrees_ok; }
};

namespace detail {

inline void note_ratio(GoodnessReport& report, const Rational& ratio) {
    if (!report.min_ratio || ratio < *report.min_ratio) report.min_ratio = ratio;
}

inline bool sizes_match(const Partition& p, const std::optional<SizeVector>& sizes) {
    if (!sizes) return true;
    return p.sizes() == sizes->sizes;
}

// V_{i-1} u V_i u V_{i+1}, indices mod r, as a sorted list.
inline std::vector<Vertex> neighbourhood_union(const std::vector<std::vector<Vertex>>& blocks, std::size_t i) {
    const std::size_t r = blocks.size();
    std::vector<Vertex> w(blocks[i]);
    if (r > 1) {
        const auto& prev = blocks[(i + r - 1) % r];
        const auto& next = blocks[(i + 1) % r];
        w.insert(w.end(), prev.begin(), prev.end());
        if (r > 2) w.insert(w.end(), next.begin(), next.end());
    }
    std::sort(w.begin(), w.end());
    return w;
}

} // namespace detail

// (n, delta)-goodness: P1 (block sizes, when given) and P2, which asks
// d(U, V_i) >= delta |V_i| for every (k-1)-set U inside V_{i-1} u V_i u V_{i+1}.
inline GoodnessReport check_good(const Hypergraph& h, const Partition& p, const Rational& delta,
                                 const std::optional<SizeVector>& sizes = std::nullopt, std::size_t cap = 16) {
    require_partition(h, p);
    GoodnessReport report;
    report.sizes_ok = detail::sizes_match(p, sizes);
    for (std::size_t i = 0; i < p.blocks.size(); ++i) {
        const auto& block = p.blocks[i];
        if (block.empty()) continue;
        const VertexSet target = VertexSet::of(h.n(), block);
        const BigInt exact_need = ceil_of(delta * block.size());
        const std::size_t need = exact_need <= 0 ? 0
                                 : exact_need > block.size() ? block.size() + 1
                                                             : exact_need.convert_to<std::size_t>();
        const auto w = detail::neighbourhood_union(p.blocks, i);
        std::optional<std::size_t> lowest;
        for_each_combination(w, h.k() - 1, [&](std::span<const Vertex> u) {
            const std::size_t d = degree_into(h, u, target);
            if (!lowest || d < *lowest) lowest = d;
            if (d < need) {
                report.degrees_ok = false;
                ++report.violation_count;
                if (report.violations.size() < cap)
                    report.violations.push_back(Violation{i, std::vector<Vertex>(u.begin(), u.end()), d});
            }
        });
        if (lowest) detail::note_ratio(report, Rational(BigInt(*lowest), BigInt(block.size())));
    }
    return report;
}

// (n, d, mu)-goodness: delta_d(H[V_i]) >= mu C(n_i, k-d) for every block.
// One violation (with a minimum-degree d-set) is listed per failing block.
inline GoodnessReport check_good_factor(const Hypergraph& h, const Partition& p, unsigned d, const Rational& mu,
                                        const std::optional<SizeVector>& sizes = std::nullopt, std::size_t cap = 16) {
    if (d < 1 || d + 1 > h.k()) throw invalid_query("d must lie in [1, k-1]");
    require_partition(h, p);
    GoodnessReport report;
    report.sizes_ok = detail::sizes_match(p, sizes);
    for (std::size_t i = 0; i < p.blocks.size(); ++i) {
        const auto sub = induced(h, p.blocks[i]);
        if (sub.graph.n() < d) continue;
        const auto md = min_d_degree_witness(sub.graph, d);
        const BigInt scale = binomial(static_cast<unsigned>(p.blocks[i].size()), h.k() - d);
        if (scale > 0) detail::note_ratio(report, Rational(BigInt(md.value), scale));
        if (Rational(md.value) < mu * Rational(scale)) {
            report.degrees_ok = false;
            ++report.violation_count;
            if (report.violations.size() < cap) report.violations.push_back(Violation{i, sub.globalize(md.witness), md.value});
        }
    }
    return report;
}

} // namespace hypercount

#endif // HYPERCOUNT_PARTITION_HPP
