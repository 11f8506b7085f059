#ifndef HYPERCOUNT_PATH_SEARCH_HPP
#define HYPERCOUNT_PATH_SEARCH_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "hypercount/paths.hpp"
#include "hypercount/search.hpp"

namespace hypercount {

namespace detail {

inline void check_ends(const Hypergraph& h, unsigned ell, const EndPair& ends) {
    if (ell < 1 || ell >= h.k()) throw invalid_query("ell must lie in [1, k-1]");
    if (ends.a.size() != ell || ends.b.size() != ell) throw invalid_query("ends must be ell-tuples");
    require_vertices(h, ends.a, "end tuple");
    require_vertices(h, ends.b, "end tuple");
    std::vector<Vertex> both(ends.a);
    both.insert(both.end(), ends.b.begin(), ends.b.end());
    if (sorted_unique(both).size() != both.size()) throw invalid_query("end tuples must be distinct and disjoint");
}

// ell-path of `length` vertices from ends.a to ends.b using pool vertices in between.
inline std::optional<EllPath> search_path(const Hypergraph& h, unsigned ell, const EndPair& ends, std::size_t length,
                                          const VertexSet& pool, NodeBudget& budget) {
    const auto layout = path_layout(length, h.k(), ell);
    std::vector<std::optional<Vertex>> fixed(length);
    for (unsigned i = 0; i < ell; ++i) {
        fixed[i] = ends.a[i];
        fixed[length - ell + i] = ends.b[i];
    }
    OrderingSearch search(h, layout, std::move(fixed), pool, budget);
    std::optional<EllPath> found;
    search.run([&](std::span<const Vertex> order) {
        found = EllPath{std::vector<Vertex>(order.begin(), order.end()), ell, h.k()};
        return true;
    });
    return found;
}

} // namespace detail

// Hamilton ell-path of H from ends.a to ends.b by exhaustive backtracking, or
// nullopt if none exists.
inline std::optional<EllPath> find_hamilton_ell_path(const Hypergraph& h, unsigned ell, const EndPair& ends,
                                                     NodeBudget& budget) {
    detail::check_ends(h, ell, ends);
    const std::size_t n = h.n();
    if ((n - ell) % (h.k() - ell) != 0)
        throw divisibility_error("Hamilton ell-path needs (k-ell) | (n-ell); n=" + std::to_string(n));
    VertexSet pool = VertexSet::full(n);
    for (Vertex v : ends.a) pool.erase(v);
    for (Vertex v : ends.b) pool.erase(v);
    return detail::search_path(h, ell, ends, n, pool, budget);
}

inline std::optional<EllPath> find_hamilton_ell_path(const Hypergraph& h, unsigned ell, const EndPair& ends,
                                                     std::uint64_t budget = kDefaultSearchBudget) {
    NodeBudget nodes(budget);
    return find_hamilton_ell_path(h, ell, ends, nodes);
}

// Any Hamilton ell-cycle of H, or nullopt.
inline std::optional<EllCycle> find_hamilton_ell_cycle(const Hypergraph& h, unsigned ell, NodeBudget& budget) {
    if (ell >= h.k()) throw invalid_query("ell must be below k");
    const std::size_t n = h.n();
    const unsigned s = h.k() - ell;
    if (n % s != 0) throw divisibility_error("Hamilton ell-cycle needs (k-ell) | n");
    if (n < 2 * h.k() - ell) return std::nullopt;
    const auto layout = detail::cycle_layout(n, h.k(), ell);
    VertexSet pool = VertexSet::full(n);
    pool.erase(0);
    std::optional<EllCycle> found;
    std::vector<std::optional<Vertex>> fixed(n);
    fixed[0] = 0;
    detail::OrderingSearch search(h, layout, fixed, pool, budget);
    search.run([&](std::span<const Vertex> order) {
        found = EllCycle{std::vector<Vertex>(order.begin(), order.end()), ell, h.k()};
        return true;
    });
    return found;
}

// True iff every ordered pair of disjoint ell-tuples is joined by a Hamilton
// ell-path. Requires (k-ell) | (n-ell).
inline bool is_hamilton_path_connected(const Hypergraph& h, unsigned ell,
                                       std::uint64_t budget = kDefaultSearchBudget) {
    if (ell < 1 || ell >= h.k()) throw invalid_query("ell must lie in [1, k-1]");
    if (h.n() < 2 * ell) throw invalid_query("need at least 2*ell vertices");
    if ((h.n() - ell) % (h.k() - ell) != 0) throw divisibility_error("Hamilton ell-path needs (k-ell) | (n-ell)");
    NodeBudget nodes(budget);
    const auto all = iota_vertices(h.n());
    return for_each_arrangement(all, ell, [&](std::span<const Vertex> a) {
        std::vector<Vertex> rest;
        for (Vertex v : all)
            if (std::find(a.begin(), a.end(), v) == a.end()) rest.push_back(v);
        return for_each_arrangement(rest, ell, [&](std::span<const Vertex> b) {
            EndPair ends{std::vector<Vertex>(a.begin(), a.end()), std::vector<Vertex>(b.begin(), b.end())};
            return find_hamilton_ell_path(h, ell, ends, nodes).has_value();
        });
    });
}

// Default vertex cap of a connecting path: 8k^5.
inline std::size_t default_connector_vertices(unsigned k) {
    std::size_t k5 = std::size_t{k} * k * k * k * k;
    return 8 * k5;
}

// Shortest ell-path (not necessarily spanning) with the given ends and at most
// max_vertices vertices. Lengths are tried in increasing order.
inline std::optional<EllPath> find_short_connector(const Hypergraph& h, unsigned ell, const EndPair& ends,
                                                   std::size_t max_vertices,
                                                   std::uint64_t budget = kDefaultSearchBudget) {
    detail::check_ends(h, ell, ends);
    if (max_vertices < 2 * ell) throw invalid_query("max_vertices must be at least 2*ell");
    const unsigned s = h.k() - ell;
    VertexSet pool = VertexSet::full(h.n());
    for (Vertex v : ends.a) pool.erase(v);
    for (Vertex v : ends.b) pool.erase(v);
    NodeBudget nodes(budget);
    std::size_t len = ell + s;
    while (len < 2 * ell) len += s;
    for (; len <= std::min(max_vertices, h.n()); len += s) {
        if (auto p = detail::search_path(h, ell, ends, len, pool, nodes)) return p;
    }
    return std::nullopt;
}

enum class EnumerationMode { count, list };

struct CycleEnumeration {
    BigInt count = 0;
    std::vector<EllCycle> cycles; // list mode: one ordering per distinct edge set, sorted by edge-set key
};

// All distinct Hamilton ell-cycles of H, distinct meaning distinct edge sets.
//
// Rotating an ordering by a multiple of k-ell keeps its edge set, so vertex 0
// is pinned into one of the first k-ell positions; reflections and small-n
// coincidences are removed by deduplicating canonical edge-set keys. With
// workers > 1 the first free position's candidates are dealt round-robin to
// threads and the per-thread key sets are merged, so the result does not
// depend on the worker count.
inline CycleEnumeration enumerate_hamilton_ell_cycles(const Hypergraph& h, unsigned ell,
                                                      EnumerationMode mode = EnumerationMode::count,
                                                      std::uint64_t budget = kDefaultSearchBudget,
                                                      unsigned workers = 1) {
    if (ell >= h.k()) throw invalid_query("ell must be below k");
    const std::size_t n = h.n();
    const unsigned s = h.k() - ell;
    if (n % s != 0) throw divisibility_error("Hamilton ell-cycle needs (k-ell) | n");
    CycleEnumeration result;
    if (n == 0 || n < 2 * h.k() - ell) return result;

    using Key = std::vector<std::uint64_t>;
    const auto layout = detail::cycle_layout(n, h.k(), ell);
    NodeBudget nodes(budget);
    VertexSet pool = VertexSet::full(n);
    pool.erase(0);
    workers = std::max(1u, workers);

    struct WorkerOut {
        std::map<Key, std::vector<Vertex>> found;
        std::exception_ptr error;
    };
    std::vector<WorkerOut> outs(workers);

    auto key_of = [&](std::span<const Vertex> order) {
        Key key;
        key.reserve(layout.windows.size());
        std::array<Vertex, kMaxUniformity> buf;
        for (const auto& w : layout.windows) {
            for (unsigned i = 0; i < h.k(); ++i) buf[i] = order[w[i]];
            key.push_back(h.edge_rank(std::span<const Vertex>(buf.data(), h.k())));
        }
        std::sort(key.begin(), key.end());
        return key;
    };

    auto work = [&](unsigned worker) {
        auto& out = outs[worker];
        try {
            for (unsigned p0 = 0; p0 < s; ++p0) {
                std::vector<std::optional<Vertex>> fixed(n);
                fixed[p0] = 0;
                detail::OrderingSearch search(h, layout, fixed, pool, nodes);
                if (workers > 1) {
                    auto firsts = search.first_candidates();
                    VertexSet mine(n);
                    for (std::size_t i = worker; i < firsts.size(); i += workers) mine.insert(firsts[i]);
                    search.restrict_first(mine);
                }
                search.run([&](std::span<const Vertex> order) {
                    auto key = key_of(order);
                    auto it = out.found.find(key);
                    if (it == out.found.end()) {
                        out.found.emplace(std::move(key),
                                          mode == EnumerationMode::list ? std::vector<Vertex>(order.begin(), order.end())
                                                                        : std::vector<Vertex>{});
                    } else if (mode == EnumerationMode::list &&
                               std::lexicographical_compare(order.begin(), order.end(), it->second.begin(),
                                                            it->second.end())) {
                        it->second.assign(order.begin(), order.end());
                    }
                    return false;
                });
            }
        } catch (...) {
            out.error = std::current_exception();
        }
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
        for (auto& t : threads) t.join();
    }
    for (auto& out : outs)
        if (out.error) std::rethrow_exception(out.error);

    std::map<Key, std::vector<Vertex>> merged = std::move(outs[0].found);
    for (unsigned w = 1; w < workers; ++w) {
        for (auto& [key, order] : outs[w].found) {
            auto it = merged.find(key);
            if (it == merged.end()) merged.emplace(key, std::move(order));
            else if (mode == EnumerationMode::list && order < it->second) it->second = std::move(order);
        }
    }
    result.count = merged.size();
    if (mode == EnumerationMode::list) {
        result.cycles.reserve(merged.size());
        for (auto& [key, order] : merged) result.cycles.push_back(EllCycle{std::move(order), ell, h.k()});
    }
    return result;
}

} // namespace hypercount

#endif // HYPERCOUNT_PATH_SEARCH_HPP
