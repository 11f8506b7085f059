#ifndef HYPERCOUNT_STITCH_HPP
#define HYPERCOUNT_STITCH_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "hypercount/cliques.hpp"
#include "hypercount/io.hpp"
#include "hypercount/partition.hpp"
#include "hypercount/path_search.hpp"
#include "hypercount/rng.hpp"

namespace hypercount {

struct StitchOptions {
    unsigned junction_retries = 20;            // junction choices tried per block
    std::uint64_t solver_budget = 4'000'000;   // search nodes per block solve
    std::uint64_t seed = 0;
};

// A Hamilton cycle together with the block structure it respects:
// segments[i] is L_i, junctions[i] is the tuple v_i picked in V_i.
template <class Cycle>
struct RespectingCertificate {
    Cycle cycle;
    Partition partition;
    std::vector<std::vector<Vertex>> segments;
    std::vector<std::vector<Vertex>> junctions;
};

// True iff, read in one of the two directions, the cycle visits the blocks
// as consecutive arcs V_1, V_2, ..., V_r (cyclically).
inline bool is_respecting(std::span<const Vertex> order, const Partition& p) {
    std::size_t covered = 0;
    Vertex top = 0;
    for (const auto& b : p.blocks) {
        covered += b.size();
        for (Vertex v : b) top = std::max(top, v);
    }
    if (covered != order.size()) throw invalid_query("cycle and partition cover different vertex sets");
    std::vector<std::ptrdiff_t> block_of(order.empty() ? 0 : std::max<std::size_t>(top + 1, order.size()), -1);
    for (std::size_t i = 0; i < p.blocks.size(); ++i)
        for (Vertex v : p.blocks[i]) {
            if (v >= block_of.size() || block_of[v] >= 0) throw invalid_query("partition blocks overlap");
            block_of[v] = static_cast<std::ptrdiff_t>(i);
        }
    for (Vertex v : order)
        if (v >= block_of.size() || block_of[v] < 0) throw invalid_query("cycle vertex outside the partition");
    const std::size_t n = order.size();
    const auto r = static_cast<std::ptrdiff_t>(p.blocks.size());
    if (r <= 1) return true;
    std::size_t transitions = 0;
    bool forward = true, backward = true;
    for (std::size_t i = 0; i < n; ++i) {
        const auto a = block_of[order[i]], b = block_of[order[(i + 1) % n]];
        if (a == b) continue;
        ++transitions;
        forward = forward && b == (a + 1) % r;
        backward = backward && a == (b + 1) % r;
    }
    return transitions == static_cast<std::size_t>(r) && (forward || backward);
}

template <class Cycle>
    requires requires(const Cycle& c) { c.order; }
bool is_respecting(const Cycle& c, const Partition& p) {
    return is_respecting(std::span<const Vertex>(c.order), p);
}

// Number of ordered partitions with block sizes sv that the cycle respects:
// every (direction, starting vertex) pair cuts the cycle into arcs of the
// prescribed sizes; distinct outcomes are counted.
inline std::size_t respecting_multiplicity(std::span<const Vertex> order, const SizeVector& sv) {
    const std::size_t n = order.size();
    if (sv.total() != n) throw invalid_query("size vector does not sum to the cycle length");
    std::set<std::vector<std::vector<Vertex>>> seen;
    for (int dir : {1, -1}) {
        for (std::size_t start = 0; start < n; ++start) {
            std::vector<std::vector<Vertex>> blocks;
            std::size_t pos = 0;
            for (auto size : sv.sizes) {
                std::vector<Vertex> b;
                for (std::size_t j = 0; j < size; ++j, ++pos) {
                    const std::size_t idx = dir > 0 ? (start + pos) % n : (start + n - pos % n) % n;
                    b.push_back(order[idx]);
                }
                std::sort(b.begin(), b.end());
                blocks.push_back(std::move(b));
            }
            seen.insert(std::move(blocks));
        }
    }
    return seen.size();
}

template <class Cycle>
    requires requires(const Cycle& c) { c.order; }
std::size_t respecting_multiplicity(const Cycle& c, const SizeVector& sv) {
    return respecting_multiplicity(std::span<const Vertex>(c.order), sv);
}

namespace detail {

// Random `size`-tuple from `block`, or a random greedy clique when `host` is
// given; the tuple is in shuffled order.
inline std::optional<std::vector<Vertex>> pick_junction(const std::vector<Vertex>& block, std::size_t size,
                                                        const Hypergraph* clique_host, Rng& rng) {
    std::vector<Vertex> pool = block;
    shuffle_in_place(pool, rng);
    std::vector<Vertex> chosen;
    for (Vertex v : pool) {
        if (chosen.size() == size) break;
        if (!clique_host || extends_clique(*clique_host, chosen, v)) chosen.push_back(v);
    }
    if (chosen.size() != size) return std::nullopt;
    return chosen;
}

// Generic stitching over the blocks of p in the host `g` with overlap `ell`
// (for power cycles g is the clique graph and ell = t-1). Returns the cyclic
// order v_r L_1 v_1 L_2 ... v_{r-1} L_r, which puts a window start at 0.
inline std::optional<std::vector<Vertex>> stitch_order(const Hypergraph& g, const Partition& p, unsigned ell,
                                                       const Hypergraph* clique_host, const StitchOptions& opts,
                                                       std::vector<std::vector<Vertex>>& segments,
                                                       std::vector<std::vector<Vertex>>& junctions) {
    const std::size_t r = p.blocks.size();
    for (unsigned outer = 0; outer < std::max(1u, opts.junction_retries); ++outer) {
        Rng rng(derive_seed(opts.seed, "junction", outer));
        auto last = pick_junction(p.blocks[r - 1], ell, clique_host, rng);
        if (!last) return std::nullopt;
        std::vector<std::vector<Vertex>> js(r), paths(r);
        js[r - 1] = *last;
        bool ok = true;
        for (std::size_t i = 0; i < r && ok; ++i) {
            const auto& prev = js[(i + r - 1) % r];
            const std::size_t length = p.blocks[i].size() + ell;
            const unsigned tries = i + 1 == r ? 1 : std::max(1u, opts.junction_retries);
            ok = false;
            for (unsigned attempt = 0; attempt < tries && !ok; ++attempt) {
                if (i + 1 < r) {
                    auto pick = pick_junction(p.blocks[i], ell, clique_host, rng);
                    if (!pick) break;
                    js[i] = *pick;
                }
                VertexSet pool = VertexSet::of(g.n(), p.blocks[i]);
                for (Vertex v : js[i]) pool.erase(v);
                NodeBudget budget(opts.solver_budget);
                auto path = search_path(g, ell, EndPair{prev, js[i]}, length, pool, budget);
                if (path) {
                    paths[i] = std::move(path->order);
                    ok = true;
                }
            }
        }
        if (!ok) continue;
        std::vector<Vertex> order(js[r - 1]);
        segments.assign(r, {});
        for (std::size_t i = 0; i < r; ++i) {
            segments[i].assign(paths[i].begin() + ell, paths[i].end() - ell);
            order.insert(order.end(), segments[i].begin(), segments[i].end());
            if (i + 1 < r) order.insert(order.end(), js[i].begin(), js[i].end());
        }
        junctions = std::move(js);
        return order;
    }
    return std::nullopt;
}

} // namespace detail

// A Hamilton ell-cycle respecting p, assembled from Hamilton ell-paths
// v_{i-1} L_i v_i in H[V_i u v_{i-1}]. Junctions are retried up to
// opts.junction_retries times per block, and the whole assembly up to the
// same number of times with a fresh v_r. The result is validated.
inline std::optional<RespectingCertificate<EllCycle>> stitch_cycle(const Hypergraph& h, const Partition& p,
                                                                   unsigned ell, const StitchOptions& opts = {}) {
    if (ell < 1 || ell >= h.k()) throw invalid_query("ell must lie in [1, k-1]");
    require_partition(h, p);
    const unsigned s = h.k() - ell;
    for (const auto& b : p.blocks) {
        if (b.size() % s != 0)
            throw divisibility_error("block of size " + std::to_string(b.size()) + " not divisible by k-ell");
        if (b.size() < ell) throw invalid_query("every block needs at least ell vertices");
    }
    RespectingCertificate<EllCycle> cert{EllCycle{{}, ell, h.k()}, p, {}, {}};
    if (p.blocks.size() == 1) {
        NodeBudget budget(opts.solver_budget);
        auto c = find_hamilton_ell_cycle(h, ell, budget);
        if (!c) return std::nullopt;
        cert.cycle = std::move(*c);
        cert.segments = {cert.cycle.order};
        cert.junctions = {{}};
    } else {
        auto order = detail::stitch_order(h, p, ell, nullptr, opts, cert.segments, cert.junctions);
        if (!order) return std::nullopt;
        cert.cycle.order = std::move(*order);
    }
    if (!validate_ell_cycle(h, cert.cycle) || !is_respecting(cert.cycle, p))
        throw error("stitched cycle failed validation");
    return cert;
}

// (t-k+1)-th power of a Hamilton tight cycle respecting p: junctions are
// (t-1)-cliques and each block is a Hamilton tight path in K_t(H_i).
inline std::optional<RespectingCertificate<PowerCycle>> stitch_power_cycle(const Hypergraph& h, const Partition& p,
                                                                          unsigned t, const StitchOptions& opts = {}) {
    if (t < h.k()) throw invalid_query("power cycle needs t >= k");
    require_partition(h, p);
    for (const auto& b : p.blocks)
        if (b.size() < t - 1) throw invalid_query("every block needs at least t-1 vertices");
    const Hypergraph kt = clique_graph(h, t, opts.solver_budget * 4);
    RespectingCertificate<PowerCycle> cert{PowerCycle{{}, t, h.k()}, p, {}, {}};
    if (p.blocks.size() == 1) {
        if (h.n() < t + 1) return std::nullopt;
        NodeBudget budget(opts.solver_budget);
        auto c = find_hamilton_ell_cycle(kt, t - 1, budget);
        if (!c) return std::nullopt;
        cert.cycle.order = std::move(c->order);
        cert.segments = {cert.cycle.order};
        cert.junctions = {{}};
    } else {
        auto order = detail::stitch_order(kt, p, t - 1, &h, opts, cert.segments, cert.junctions);
        if (!order) return std::nullopt;
        cert.cycle.order = std::move(*order);
    }
    if (!validate_power_cycle(h, cert.cycle) || !is_respecting(cert.cycle, p))
        throw error("stitched power cycle failed validation");
    return cert;
}

template <class Cycle>
json to_json(const RespectingCertificate<Cycle>& cert) {
    return json{{"blocks", cert.partition.blocks},
                {"junctions", cert.junctions},
                {"segments", cert.segments},
                {"order", cert.cycle.order}};
}

} // namespace hypercount

#endif // HYPERCOUNT_STITCH_HPP
