#ifndef HYPERCOUNT_GENERATORS_HPP
#define HYPERCOUNT_GENERATORS_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "hypercount/paths.hpp"
#include "hypercount/rng.hpp"

namespace hypercount {

// Binomial random k-graph: each k-subset of {0..n-1} is an edge independently
// with probability p. Subsets are visited in lexicographic order, one draw each.
inline Hypergraph gen_random(std::size_t n, unsigned k, double p, std::uint64_t seed) {
    if (k < 2 || n < k) throw invalid_query("gen_random needs n >= k >= 2");
    if (!(p >= 0.0 && p <= 1.0)) throw invalid_query("edge probability must lie in [0,1]");
    Rng rng(seed);
    std::vector<std::vector<Vertex>> edges;
    const auto all = iota_vertices(n);
    for_each_combination(all, k, [&](std::span<const Vertex> e) {
        if (unit_uniform(rng) < p) edges.emplace_back(e.begin(), e.end());
    });
    return Hypergraph(n, k, std::move(edges));
}

inline std::vector<Vertex> random_order(std::size_t n, std::uint64_t seed) {
    auto order = iota_vertices(n);
    Rng rng(seed);
    shuffle_in_place(order, rng);
    return order;
}

template <class Structure>
struct Planted {
    Hypergraph graph;
    Structure structure;
};

// A uniformly random Hamilton ell-cycle, plus each other k-set independently
// with probability noise.
inline Planted<EllCycle> planted_cycle(std::size_t n, unsigned k, unsigned ell, std::uint64_t seed,
                                       double noise = 0.0) {
    EllCycle c{random_order(n, derive_seed(seed, "planted-order")), ell, k};
    auto edges = cycle_edges(c);
    if (noise > 0) {
        auto extra = gen_random(n, k, noise, derive_seed(seed, "planted-noise")).edge_list();
        edges.insert(edges.end(), extra.begin(), extra.end());
    }
    return {Hypergraph(n, k, std::move(edges)), std::move(c)};
}

inline Planted<EllPath> planted_path(std::size_t n, unsigned k, unsigned ell, std::uint64_t seed,
                                     double noise = 0.0) {
    EllPath p{random_order(n, derive_seed(seed, "planted-order")), ell, k};
    auto edges = path_edges(p);
    if (noise > 0) {
        auto extra = gen_random(n, k, noise, derive_seed(seed, "planted-noise")).edge_list();
        edges.insert(edges.end(), extra.begin(), extra.end());
    }
    return {Hypergraph(n, k, std::move(edges)), std::move(p)};
}

// Vertex-disjoint union; the i-th graph's vertices are shifted past the earlier ones.
inline Hypergraph disjoint_union(const std::vector<Hypergraph>& parts) {
    if (parts.empty()) throw invalid_query("disjoint_union of nothing");
    const unsigned k = parts.front().k();
    std::vector<std::vector<Vertex>> edges;
    std::size_t offset = 0;
    for (const auto& h : parts) {
        if (h.k() != k) throw invalid_query("disjoint_union needs equal uniformity");
        for (std::size_t i = 0; i < h.edge_count(); ++i) {
            std::vector<Vertex> e(h.edge(i).begin(), h.edge(i).end());
            for (auto& v : e) v += static_cast<Vertex>(offset);
            edges.push_back(std::move(e));
        }
        offset += h.n();
    }
    return Hypergraph(offset, k, std::move(edges));
}

} // namespace hypercount

#endif // HYPERCOUNT_GENERATORS_HPP
