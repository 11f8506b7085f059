#ifndef HYPERCOUNT_CLIQUES_HPP
#define HYPERCOUNT_CLIQUES_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypercount/paths.hpp"
#include "hypercount/search.hpp"

namespace hypercount {

// True iff every k-subset of `set` is an edge. Sets smaller than k qualify.
inline bool spans_clique(const Hypergraph& h, std::span<const Vertex> set) {
    if (set.size() < h.k()) return true;
    return for_each_combination(set, h.k(), [&](std::span<const Vertex> e) { return h.contains_edge(e); });
}

namespace detail {

// Adding v to a clique S keeps it a clique iff every (k-1)-subset of S plus v is an edge.
inline bool extends_clique(const Hypergraph& h, std::span<const Vertex> clique, Vertex v) {
    if (clique.size() + 1 < h.k()) return true;
    std::vector<Vertex> buf(h.k());
    return for_each_combination(clique, h.k() - 1, [&](std::span<const Vertex> sub) {
        std::copy(sub.begin(), sub.end(), buf.begin());
        buf.back() = v;
        return h.contains_edge(buf);
    });
}

template <class F>
bool clique_dfs(const Hypergraph& h, std::size_t size, std::span<const Vertex> domain, std::size_t from,
                std::vector<Vertex>& current, NodeBudget& budget, F& f) {
    if (current.size() == size) return invoke_continue(f, std::span<const Vertex>(current)) == false;
    for (std::size_t i = from; i + (size - current.size()) <= domain.size(); ++i) {
        budget.charge();
        const Vertex v = domain[i];
        if (!extends_clique(h, current, v)) continue;
        current.push_back(v);
        bool stop = clique_dfs(h, size, domain, i + 1, current, budget, f);
        current.pop_back();
        if (stop) return true;
    }
    return false;
}

} // namespace detail

// Calls f(clique) for each `size`-clique inside `domain` (sorted), in
// lexicographic order. f may return false to stop. Returns false if stopped.
template <class F>
bool for_each_clique(const Hypergraph& h, std::size_t size, std::span<const Vertex> domain, F&& f,
                     NodeBudget& budget) {
    auto sorted = detail::sorted_unique(domain);
    detail::require_vertices(h, sorted, "clique domain");
    std::vector<Vertex> current;
    current.reserve(size);
    return !detail::clique_dfs(h, size, sorted, 0, current, budget, f);
}

// K_t(H): the t-graph on V(H) whose edges are the t-sets spanning k-cliques.
inline Hypergraph clique_graph(const Hypergraph& h, unsigned t, std::uint64_t budget = kDefaultSearchBudget) {
    if (t < h.k()) throw invalid_query("clique graph needs t >= k");
    NodeBudget nodes(budget);
    std::vector<std::vector<Vertex>> edges;
    const auto all = iota_vertices(h.n());
    for_each_clique(h, t, all, [&](std::span<const Vertex> c) { edges.emplace_back(c.begin(), c.end()); }, nodes);
    return Hypergraph(h.n(), t, std::move(edges));
}

// Lexicographically first t-clique inside `domain`, or nullopt.
inline std::optional<std::vector<Vertex>> find_clique(const Hypergraph& h, unsigned t, std::span<const Vertex> domain,
                                                      NodeBudget& budget) {
    if (t < h.k()) throw invalid_query("clique search needs t >= k");
    std::optional<std::vector<Vertex>> found;
    for_each_clique(
        h, t, domain,
        [&](std::span<const Vertex> c) {
            found.emplace(c.begin(), c.end());
            return false;
        },
        budget);
    return found;
}

inline std::optional<std::vector<Vertex>> find_clique(const Hypergraph& h, unsigned t,
                                                      std::uint64_t budget = kDefaultSearchBudget) {
    NodeBudget nodes(budget);
    const auto all = iota_vertices(h.n());
    return find_clique(h, t, all, nodes);
}

// True iff every cyclic t-window of C spans a k-clique of H.
inline bool validate_power_cycle(const Hypergraph& h, const PowerCycle& c) {
    if (c.t < c.k) throw invalid_structure("power cycle needs t >= k");
    if (c.order.size() < c.t) throw invalid_structure("power cycle needs at least t vertices");
    detail::require_distinct(c.order, "power cycle");
    detail::require_host(h, c.k, c.order);
    const std::size_t n = c.order.size();
    std::vector<Vertex> window(c.t);
    for (std::size_t s = 0; s < n; ++s) {
        for (unsigned i = 0; i < c.t; ++i) window[i] = c.order[(s + i) % n];
        if (!spans_clique(h, window)) return false;
    }
    return true;
}

} // namespace hypercount

#endif // HYPERCOUNT_CLIQUES_HPP
