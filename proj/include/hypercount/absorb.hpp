#ifndef HYPERCOUNT_ABSORB_HPP
#define HYPERCOUNT_ABSORB_HPP

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "hypercount/path_search.hpp"
#include "hypercount/rational.hpp"

namespace hypercount {

struct AbsorberConfig {
    Rational beta{1, 100};
    unsigned t_abs = 4;

    void validate(unsigned k) const {
        if (beta <= 0) throw invalid_query("beta must be positive");
        if (t_abs < k) throw invalid_query("absorber size must be at least k");
    }
};

// An ell-path Q with the ends of P on V(P) u S_1 u ... u S_j, or nullopt.
// With no sets, P itself.
inline std::optional<EllPath> can_absorb(const Hypergraph& h, const EllPath& p,
                                         const std::vector<std::vector<Vertex>>& sets,
                                         std::uint64_t budget = kDefaultSearchBudget) {
    if (p.k != h.k()) throw invalid_query("path and host uniformity differ");
    if (p.ell < 1 || p.ell >= h.k()) throw invalid_query("ell must lie in [1, k-1]");
    if (!validate_ell_path(h, p)) throw invalid_query("path is not an ell-path of H");
    const unsigned s = h.k() - p.ell;
    VertexSet pool = VertexSet::of(h.n(), p.order);
    std::size_t length = p.order.size();
    for (const auto& set : sets) {
        if (set.size() != s) throw invalid_query("absorbed sets must have k-ell vertices");
        detail::require_vertices(h, set, "absorbed set");
        for (Vertex v : set) {
            if (pool.contains(v)) throw invalid_query("absorbed sets overlap the path or each other");
            pool.insert(v);
        }
        length += set.size();
    }
    if (sets.empty()) return p;
    EndPair ends{std::vector<Vertex>(p.first_end().begin(), p.first_end().end()),
                 std::vector<Vertex>(p.last_end().begin(), p.last_end().end())};
    for (Vertex v : ends.a) pool.erase(v);
    for (Vertex v : ends.b) {
        // ends of a short path can overlap; a longer path cannot keep both
        if (std::find(ends.a.begin(), ends.a.end(), v) != ends.a.end()) return std::nullopt;
        pool.erase(v);
    }
    NodeBudget nodes(budget);
    return detail::search_path(h, p.ell, ends, length, pool, nodes);
}

struct SetClassification {
    BigInt count;       // ordered t_abs-vertex ell-paths in H - S absorbing S
    Rational threshold; // beta n^t_abs
    bool good = false;
};

// ell = k - |S|. Paths are enumerated as vertex sequences; absorbability is
// cached by (first end, last end, vertex set), on which it depends only.
inline SetClassification classify_set(const Hypergraph& h, const std::vector<Vertex>& set, const AbsorberConfig& cfg,
                                      std::uint64_t budget = kDefaultSearchBudget) {
    cfg.validate(h.k());
    if (set.empty() || set.size() >= h.k()) throw invalid_query("S must have between 1 and k-1 vertices");
    detail::require_vertices(h, set, "S");
    detail::require_distinct(set, "S");
    const unsigned ell = h.k() - static_cast<unsigned>(set.size());
    const unsigned s = h.k() - ell;
    if ((cfg.t_abs - ell) % s != 0)
        throw divisibility_error("absorber size needs (k-ell) | (t_abs-ell)");

    SetClassification out;
    out.threshold = cfg.beta * pow(Rational(h.n()), cfg.t_abs);
    VertexSet pool = VertexSet::full(h.n());
    for (Vertex v : set) pool.erase(v);
    if (pool.count() >= cfg.t_abs) {
        NodeBudget nodes(budget);
        const auto layout = detail::path_layout(cfg.t_abs, h.k(), ell);
        detail::OrderingSearch search(h, layout, std::vector<std::optional<Vertex>>(cfg.t_abs), pool, nodes);
        using Key = std::tuple<std::vector<Vertex>, std::vector<Vertex>, std::vector<Vertex>>;
        std::map<Key, bool> cache;
        search.run([&](std::span<const Vertex> order) {
            EllPath p{std::vector<Vertex>(order.begin(), order.end()), ell, h.k()};
            Key key{std::vector<Vertex>(p.first_end().begin(), p.first_end().end()),
                    std::vector<Vertex>(p.last_end().begin(), p.last_end().end()), detail::sorted_unique(p.order)};
            auto it = cache.find(key);
            if (it == cache.end()) it = cache.emplace(key, can_absorb(h, p, {set}, budget).has_value()).first;
            if (it->second) ++out.count;
            return false;
        });
    }
    out.good = Rational(out.count) >= out.threshold;
    return out;
}

} // namespace hypercount

#endif // HYPERCOUNT_ABSORB_HPP
