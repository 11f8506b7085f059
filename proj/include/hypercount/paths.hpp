#ifndef HYPERCOUNT_PATHS_HPP
#define HYPERCOUNT_PATHS_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hypercount/hypergraph.hpp"

namespace hypercount {

// Linear ordering whose edges are the k-windows starting at multiples of
// k-ell; consecutive edges share exactly ell vertices.
struct EllPath {
    std::vector<Vertex> order;
    unsigned ell = 1;
    unsigned k = 2;

    std::span<const Vertex> first_end() const { return std::span<const Vertex>(order).first(ell); }
    std::span<const Vertex> last_end() const { return std::span<const Vertex>(order).last(ell); }
};

// Cyclic ordering with the same window structure, wrapping around.
struct EllCycle {
    std::vector<Vertex> order;
    unsigned ell = 1;
    unsigned k = 2;
};

// Cyclic ordering where every t consecutive vertices span a k-uniform clique.
struct PowerCycle {
    std::vector<Vertex> order;
    unsigned t = 2;
    unsigned k = 2;
};

// Prescribed ends of an ell-path: ordered, disjoint ell-tuples.
struct EndPair {
    std::vector<Vertex> a;
    std::vector<Vertex> b;
};

namespace detail {

inline void require_distinct(std::span<const Vertex> order, const char* what) {
    auto sorted = sorted_unique(order);
    if (sorted.size() != order.size()) throw invalid_structure(std::string(what) + " repeats a vertex");
}

inline void check_path_shape(unsigned k, unsigned ell, std::size_t len) {
    if (k < 2 || ell < 1 || ell >= k) throw invalid_structure("ell-path needs 1 <= ell <= k-1");
    if (len < k) throw invalid_structure("ell-path needs at least k vertices");
    if ((len - ell) % (k - ell) != 0)
        throw invalid_structure("ell-path length " + std::to_string(len) + " violates (k-ell) | (len-ell)");
}

inline void check_cycle_shape(unsigned k, unsigned ell, std::size_t len) {
    if (k < 2 || ell >= k) throw invalid_structure("ell-cycle needs 0 <= ell <= k-1");
    if (len % (k - ell) != 0)
        throw invalid_structure("ell-cycle length " + std::to_string(len) + " violates (k-ell) | len");
    if (len < 2 * k - ell)
        throw invalid_structure("ell-cycle needs at least 2k-ell vertices so consecutive edges meet in ell");
}

inline void require_host(const Hypergraph& h, unsigned k, std::span<const Vertex> order) {
    if (k != h.k()) throw invalid_structure("structure uniformity differs from host");
    for (Vertex v : order)
        if (v >= h.n()) throw invalid_structure("ordering vertex " + std::to_string(v) + " outside V(H)");
}

} // namespace detail

// Start offsets of the edge windows of an ell-path on len vertices.
inline std::vector<std::size_t> path_window_starts(std::size_t len, unsigned k, unsigned ell) {
    std::vector<std::size_t> starts;
    for (std::size_t s = 0; s + k <= len; s += k - ell) starts.push_back(s);
    return starts;
}

// A Hamilton ell-cycle on n vertices has n/(k-ell) edges.
inline std::size_t ell_cycle_edge_count(std::size_t n, unsigned k, unsigned ell) {
    if (ell >= k) throw invalid_query("ell must be below k");
    if (n % (k - ell) != 0) throw divisibility_error("(k-ell) must divide n");
    return n / (k - ell);
}

// Vertex lists of the edges of an ell-path ordering.
inline std::vector<std::vector<Vertex>> path_edges(const EllPath& p) {
    detail::check_path_shape(p.k, p.ell, p.order.size());
    std::vector<std::vector<Vertex>> out;
    for (auto s : path_window_starts(p.order.size(), p.k, p.ell))
        out.emplace_back(p.order.begin() + static_cast<std::ptrdiff_t>(s),
                         p.order.begin() + static_cast<std::ptrdiff_t>(s + p.k));
    return out;
}

inline std::vector<std::vector<Vertex>> cycle_edges(const EllCycle& c) {
    detail::check_cycle_shape(c.k, c.ell, c.order.size());
    const std::size_t n = c.order.size();
    std::vector<std::vector<Vertex>> out;
    for (std::size_t s = 0; s < n; s += c.k - c.ell) {
        std::vector<Vertex> e;
        for (unsigned i = 0; i < c.k; ++i) e.push_back(c.order[(s + i) % n]);
        out.push_back(std::move(e));
    }
    return out;
}

// Sorted colex ranks of the cycle's edges; equal keys mean the same sub-hypergraph.
inline std::vector<std::uint64_t> edge_set_key(const Hypergraph& h, const std::vector<std::vector<Vertex>>& edges) {
    std::vector<std::uint64_t> key;
    key.reserve(edges.size());
    for (const auto& e : edges) key.push_back(h.edge_rank(e));
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    return key;
}

// True iff every window of P is an edge of H. Throws invalid_structure on a
// malformed ordering.
inline bool validate_ell_path(const Hypergraph& h, const EllPath& p) {
    detail::check_path_shape(p.k, p.ell, p.order.size());
    detail::require_distinct(p.order, "ell-path");
    detail::require_host(h, p.k, p.order);
    for (auto s : path_window_starts(p.order.size(), p.k, p.ell))
        if (!h.contains_edge(std::span<const Vertex>(p.order).subspan(s, p.k))) return false;
    return true;
}

inline bool validate_ell_cycle(const Hypergraph& h, const EllCycle& c) {
    detail::check_cycle_shape(c.k, c.ell, c.order.size());
    detail::require_distinct(c.order, "ell-cycle");
    detail::require_host(h, c.k, c.order);
    for (const auto& e : cycle_edges(c))
        if (!h.contains_edge(e)) return false;
    return true;
}

// Same, and additionally spanning V(H).
inline bool is_hamilton_ell_cycle(const Hypergraph& h, const EllCycle& c) {
    return c.order.size() == h.n() && validate_ell_cycle(h, c);
}

} // namespace hypercount

#endif // HYPERCOUNT_PATHS_HPP
