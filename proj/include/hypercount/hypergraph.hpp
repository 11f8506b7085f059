#ifndef HYPERCOUNT_HYPERGRAPH_HPP
#define HYPERCOUNT_HYPERGRAPH_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypercount/combinatorics.hpp"
#include "hypercount/error.hpp"
#include "hypercount/vertex_set.hpp"

namespace hypercount {

inline constexpr unsigned kMaxUniformity = 16;

// An n-vertex k-uniform hypergraph on vertices 0..n-1. Immutable once built.
//
// Edges are kept as a flat, lexicographically sorted array of sorted k-tuples.
// Membership goes through the colex rank of the edge, either in a dense
// bitmap or a sorted rank array. When it fits, every (k-1)-set also gets a
// bitset of the vertices completing it to an edge, so codegree queries are a
// popcount over n/64 words.
class Hypergraph {
public:
    Hypergraph() : Hypergraph(0, 2, {}) {}

    Hypergraph(std::size_t n, unsigned k, std::vector<std::vector<Vertex>> edges) : n_(n), k_(k) {
        if (k < 1 || k > kMaxUniformity)
            throw invalid_structure("uniformity k=" + std::to_string(k) + " outside [1," +
                                    std::to_string(kMaxUniformity) + "]");
        if (n > (std::size_t{1} << 24)) throw invalid_structure("too many vertices");
        build_binomials();
        if (binomial_u64(n_, k_) == kSaturated) throw invalid_structure("C(n,k) overflows 64-bit ranks");

        std::vector<std::uint64_t> ranks;
        ranks.reserve(edges.size());
        for (auto& e : edges) {
            if (e.size() != k_)
                throw invalid_structure("edge of size " + std::to_string(e.size()) + " in a " +
                                        std::to_string(k_) + "-graph");
            std::sort(e.begin(), e.end());
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] >= n_) throw invalid_structure("edge vertex " + std::to_string(e[i]) + " out of range");
                if (i > 0 && e[i] == e[i - 1]) throw invalid_structure("edge with repeated vertex");
            }
            ranks.push_back(rank_sorted(e));
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        flat_.reserve(edges.size() * k_);
        for (const auto& e : edges) flat_.insert(flat_.end(), e.begin(), e.end());
        edge_count_ = edges.size();

        std::sort(ranks.begin(), ranks.end());
        ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
        const std::uint64_t universe = binomial_u64(n_, k_);
        dense_ = universe > 0 && universe <= kDenseMembershipLimit;
        if (dense_) {
            member_bits_.assign((universe + 63) / 64, 0);
            for (auto r : ranks) member_bits_[r >> 6] |= std::uint64_t{1} << (r & 63);
        } else {
            member_ranks_ = std::move(ranks);
        }
        build_codegree_index();
    }

    static Hypergraph complete(std::size_t n, unsigned k) {
        std::vector<std::vector<Vertex>> edges;
        auto all = iota_vertices(n);
        for_each_combination(all, k, [&](std::span<const Vertex> e) { edges.emplace_back(e.begin(), e.end()); });
        return Hypergraph(n, k, std::move(edges));
    }

    static Hypergraph empty(std::size_t n, unsigned k) { return Hypergraph(n, k, {}); }

    std::size_t n() const { return n_; }
    unsigned k() const { return k_; }
    std::size_t edge_count() const { return edge_count_; }

    std::span<const Vertex> edge(std::size_t i) const { return {flat_.data() + i * k_, k_}; }

    std::vector<std::vector<Vertex>> edge_list() const {
        std::vector<std::vector<Vertex>> out;
        out.reserve(edge_count_);
        for (std::size_t i = 0; i < edge_count_; ++i) out.emplace_back(edge(i).begin(), edge(i).end());
        return out;
    }

    // Vertices in any order; false for wrong size, repeats or out-of-range.
    bool contains_edge(std::span<const Vertex> vertices) const {
        if (vertices.size() != k_) return false;
        std::array<Vertex, kMaxUniformity> buf{};
        std::copy(vertices.begin(), vertices.end(), buf.begin());
        std::sort(buf.begin(), buf.begin() + k_);
        for (unsigned i = 0; i < k_; ++i) {
            if (buf[i] >= n_) return false;
            if (i > 0 && buf[i] == buf[i - 1]) return false;
        }
        return contains_rank(rank_sorted(std::span<const Vertex>(buf.data(), k_)));
    }

    // Colex rank of a sorted subset of size at most k.
    std::uint64_t rank_sorted(std::span<const Vertex> sorted) const {
        std::uint64_t r = 0;
        for (std::size_t i = 0; i < sorted.size(); ++i) r += binom_[sorted[i] * (k_ + 1) + i + 1];
        return r;
    }

    std::uint64_t edge_rank(std::span<const Vertex> vertices) const {
        std::array<Vertex, kMaxUniformity> buf{};
        std::copy(vertices.begin(), vertices.end(), buf.begin());
        std::sort(buf.begin(), buf.begin() + vertices.size());
        return rank_sorted(std::span<const Vertex>(buf.data(), vertices.size()));
    }

    bool has_codegree_index() const { return !codegree_words_.empty(); }

    // Bitset words of the vertices completing the (k-1)-set u to an edge, or
    // nullptr when no index was built. u may be unsorted; it must have k-1
    // distinct in-range vertices.
    const std::uint64_t* completion_words(std::span<const Vertex> u) const {
        if (codegree_words_.empty()) return nullptr;
        std::array<Vertex, kMaxUniformity> buf{};
        std::copy(u.begin(), u.end(), buf.begin());
        std::sort(buf.begin(), buf.begin() + u.size());
        return codegree_words_.data() + rank_sorted(std::span<const Vertex>(buf.data(), u.size())) * words_per_set_;
    }

    VertexSet completions(std::span<const Vertex> u) const {
        VertexSet out(n_);
        if (const auto* w = completion_words(u)) {
            std::copy(w, w + words_per_set_, out.words().begin());
            return out;
        }
        std::array<Vertex, kMaxUniformity> buf{};
        std::copy(u.begin(), u.end(), buf.begin());
        for (std::size_t v = 0; v < n_; ++v) {
            buf[u.size()] = static_cast<Vertex>(v);
            if (contains_edge(std::span<const Vertex>(buf.data(), u.size() + 1))) out.insert(static_cast<Vertex>(v));
        }
        return out;
    }

    // Number of v in `within` with u + v an edge.
    std::size_t completion_count(std::span<const Vertex> u, const VertexSet& within) const {
        if (const auto* w = completion_words(u)) return within.intersect_count(std::span<const std::uint64_t>(w, words_per_set_));
        std::size_t c = 0;
        std::array<Vertex, kMaxUniformity> buf{};
        std::copy(u.begin(), u.end(), buf.begin());
        within.for_each([&](Vertex v) {
            buf[u.size()] = v;
            if (contains_edge(std::span<const Vertex>(buf.data(), u.size() + 1))) ++c;
        });
        return c;
    }

    bool has_completion(std::span<const Vertex> u, const VertexSet& within) const {
        if (const auto* w = completion_words(u)) return within.intersects(std::span<const std::uint64_t>(w, words_per_set_));
        return completion_count(u, within) > 0;
    }

    std::size_t words_per_set() const { return words_per_set_; }

    friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
        return a.n_ == b.n_ && a.k_ == b.k_ && a.flat_ == b.flat_;
    }

private:
    static constexpr std::uint64_t kDenseMembershipLimit = std::uint64_t{1} << 27;
    static constexpr std::uint64_t kCodegreeWordLimit = std::uint64_t{1} << 23;

    void build_binomials() {
        // binom_[v * (k+1) + i] = C(v, i) for v < n, i <= k.
        binom_.assign(std::max<std::size_t>(n_, 1) * (k_ + 1), 0);
        for (std::size_t v = 0; v < n_; ++v)
            for (unsigned i = 0; i <= k_; ++i) binom_[v * (k_ + 1) + i] = binomial_u64(v, i);
    }

    bool contains_rank(std::uint64_t r) const {
        if (dense_) return (member_bits_[r >> 6] >> (r & 63)) & 1;
        return std::binary_search(member_ranks_.begin(), member_ranks_.end(), r);
    }

    void build_codegree_index() {
        if (k_ < 2 || n_ == 0) return;
        words_per_set_ = (n_ + 63) / 64;
        const std::uint64_t sets = binomial_u64(n_, k_ - 1);
        if (sets == kSaturated || sets * words_per_set_ > kCodegreeWordLimit) return;
        codegree_words_.assign(sets * words_per_set_, 0);
        std::array<Vertex, kMaxUniformity> rest;
        for (std::size_t i = 0; i < edge_count_; ++i) {
            auto e = edge(i);
            for (unsigned drop = 0; drop < k_; ++drop) {
                unsigned t = 0;
                for (unsigned j = 0; j < k_; ++j)
                    if (j != drop) rest[t++] = e[j];
                auto r = rank_sorted(std::span<const Vertex>(rest.data(), k_ - 1));
                codegree_words_[r * words_per_set_ + (e[drop] >> 6)] |= std::uint64_t{1} << (e[drop] & 63);
            }
        }
    }

    std::size_t n_ = 0;
    unsigned k_ = 2;
    std::size_t edge_count_ = 0;
    std::vector<Vertex> flat_;
    std::vector<std::uint64_t> binom_;
    bool dense_ = false;
    std::vector<std::uint64_t> member_bits_;
    std::vector<std::uint64_t> member_ranks_;
    std::size_t words_per_set_ = 0;
    std::vector<std::uint64_t> codegree_words_;
};

namespace detail {

inline void require_vertices(const Hypergraph& h, std::span<const Vertex> s, const char* what) {
    for (Vertex v : s)
        if (v >= h.n()) throw invalid_query(std::string(what) + " contains vertex " + std::to_string(v) + " outside V(H)");
}

inline std::vector<Vertex> sorted_unique(std::span<const Vertex> s) {
    std::vector<Vertex> out(s.begin(), s.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace detail

// Number of edges containing u whose other vertices all lie in s. Unlike
// degree(), u and s may overlap; vertices of u inside s are ignored.
inline std::size_t degree_into(const Hypergraph& h, std::span<const Vertex> u, const VertexSet& s) {
    const unsigned k = h.k();
    if (u.size() + 1 == k) return h.completion_count(u, s);
    if (u.size() >= k) return 0;

    VertexSet u_set = VertexSet::of(h.n(), u);
    VertexSet rest = s;
    rest -= u_set;
    const std::size_t missing = k - u.size();
    const auto pool = rest.to_vector();
    if (binomial_u64(pool.size(), missing) < h.edge_count()) {
        std::size_t count = 0;
        std::vector<Vertex> candidate(u.begin(), u.end());
        candidate.resize(k);
        for_each_combination(pool, missing, [&](std::span<const Vertex> extra) {
            std::copy(extra.begin(), extra.end(), candidate.begin() + static_cast<std::ptrdiff_t>(u.size()));
            if (h.contains_edge(candidate)) ++count;
        });
        return count;
    }
    std::size_t count = 0;
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        auto e = h.edge(i);
        std::size_t inside_u = 0;
        bool ok = true;
        for (Vertex v : e) {
            if (u_set.contains(v)) ++inside_u;
            else if (!rest.contains(v)) { ok = false; break; }
        }
        if (ok && inside_u == u.size()) ++count;
    }
    return count;
}

// d(U, S): edges containing U whose remaining vertices are all in S.
// Requires |U| <= k-1 and U, S disjoint subsets of V(H).
inline std::size_t degree(const Hypergraph& h, std::span<const Vertex> u, std::span<const Vertex> s) {
    detail::require_vertices(h, u, "U");
    detail::require_vertices(h, s, "S");
    auto us = detail::sorted_unique(u);
    if (us.size() != u.size()) throw invalid_query("U has repeated vertices");
    if (u.size() >= h.k()) throw invalid_query("|U| must be at most k-1");
    VertexSet s_set = VertexSet::of(h.n(), s);
    for (Vertex v : u)
        if (s_set.contains(v)) throw invalid_query("U and S intersect");
    return degree_into(h, u, s_set);
}

struct MinDegree {
    std::size_t value = 0;
    std::vector<Vertex> witness; // a d-set attaining the minimum; empty if there are no d-sets
};

// delta_d(H) together with a d-set attaining it.
inline MinDegree min_d_degree_witness(const Hypergraph& h, unsigned d) {
    if (d < 1 || d + 1 > h.k()) throw invalid_query("d must lie in [1, k-1]");
    MinDegree out;
    if (h.n() < d) return out;
    const std::uint64_t sets = binomial_u64(h.n(), d);
    if (sets > (std::uint64_t{1} << 28)) throw invalid_query("too many d-sets for a degree table");
    std::vector<std::uint32_t> counts(sets, 0);
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        for_each_combination(h.edge(i), d, [&](std::span<const Vertex> sub) { ++counts[h.rank_sorted(sub)]; });
    }
    auto it = std::min_element(counts.begin(), counts.end());
    out.value = *it;
    // Invert the colex rank.
    std::uint64_t r = static_cast<std::uint64_t>(it - counts.begin());
    out.witness.resize(d);
    for (unsigned i = d; i-- > 0;) {
        Vertex v = i;
        while (binomial_u64(v + 1, i + 1) <= r) ++v;
        out.witness[i] = v;
        r -= binomial_u64(v, i + 1);
    }
    return out;
}

// delta_d(H): minimum over d-sets S of the number of edges containing S.
inline std::size_t min_d_degree(const Hypergraph& h, unsigned d) { return min_d_degree_witness(h, d).value; }

// delta(H) = delta_{k-1}(H).
inline std::size_t min_codegree(const Hypergraph& h) { return min_d_degree(h, h.k() - 1); }

struct InducedSubgraph {
    Hypergraph graph;
    std::vector<Vertex> to_global; // local vertex i is global vertex to_global[i]

    std::vector<Vertex> globalize(std::span<const Vertex> local) const {
        std::vector<Vertex> out;
        out.reserve(local.size());
        for (Vertex v : local) out.push_back(to_global[v]);
        return out;
    }

    // Global-to-local; throws if a vertex is not in the subgraph.
    std::vector<Vertex> localize(std::span<const Vertex> global) const {
        std::vector<Vertex> out;
        out.reserve(global.size());
        for (Vertex v : global) {
            auto it = std::lower_bound(to_global.begin(), to_global.end(), v);
            if (it == to_global.end() || *it != v) throw invalid_query("vertex not in induced subgraph");
            out.push_back(static_cast<Vertex>(it - to_global.begin()));
        }
        return out;
    }
};

// H[S], relabelled so that the i-th smallest vertex of S becomes i.
inline InducedSubgraph induced(const Hypergraph& h, std::span<const Vertex> s) {
    detail::require_vertices(h, s, "S");
    InducedSubgraph out;
    out.to_global = detail::sorted_unique(s);
    std::vector<std::int64_t> local(h.n(), -1);
    for (std::size_t i = 0; i < out.to_global.size(); ++i) local[out.to_global[i]] = static_cast<std::int64_t>(i);
    std::vector<std::vector<Vertex>> edges;
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
        auto e = h.edge(i);
        std::vector<Vertex> mapped;
        mapped.reserve(e.size());
        for (Vertex v : e) {
            if (local[v] < 0) break;
            mapped.push_back(static_cast<Vertex>(local[v]));
        }
        if (mapped.size() == e.size()) edges.push_back(std::move(mapped));
    }
    out.graph = Hypergraph(out.to_global.size(), h.k(), std::move(edges));
    return out;
}

// H with extra edges; used for monotonicity experiments.
inline Hypergraph with_edges(const Hypergraph& h, const std::vector<std::vector<Vertex>>& extra) {
    auto edges = h.edge_list();
    edges.insert(edges.end(), extra.begin(), extra.end());
    return Hypergraph(h.n(), h.k(), std::move(edges));
}

} // namespace hypercount

#endif // HYPERCOUNT_HYPERGRAPH_HPP
