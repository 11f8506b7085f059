#ifndef HYPERCOUNT_FACTORS_HPP
#define HYPERCOUNT_FACTORS_HPP

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "hypercount/generators.hpp"
#include "hypercount/io.hpp"
#include "hypercount/partition.hpp"
#include "hypercount/search.hpp"

namespace hypercount {

// The pattern F: a k-graph on t = |V(F)| vertices with at least one edge.
struct FactorSpec {
    Hypergraph pattern;

    unsigned t() const { return static_cast<unsigned>(pattern.n()); }
    void validate(unsigned host_k) const {
        if (pattern.k() != host_k) throw invalid_query("pattern and host uniformity differ");
        if (pattern.n() < pattern.k()) throw invalid_query("pattern needs t >= k");
        if (pattern.edge_count() == 0) throw invalid_query("pattern needs at least one edge");
    }
    static FactorSpec single_edge(unsigned k) { return FactorSpec{Hypergraph::complete(k, k)}; }
};

// copies[c][j] is the image of pattern vertex j in copy c.
struct FactorDecomposition {
    std::vector<std::vector<Vertex>> copies;
};

// A copy up to automorphisms of F: its vertex set and the ranks of its image edges.
using CopyKey = std::pair<std::vector<Vertex>, std::vector<std::uint64_t>>;

inline CopyKey copy_key(const Hypergraph& h, const FactorSpec& spec, std::span<const Vertex> image) {
    CopyKey key;
    key.first.assign(image.begin(), image.end());
    std::sort(key.first.begin(), key.first.end());
    std::array<Vertex, kMaxUniformity> buf;
    for (std::size_t e = 0; e < spec.pattern.edge_count(); ++e) {
        auto pe = spec.pattern.edge(e);
        for (unsigned j = 0; j < h.k(); ++j) buf[j] = image[pe[j]];
        key.second.push_back(h.edge_rank(std::span<const Vertex>(buf.data(), h.k())));
    }
    std::sort(key.second.begin(), key.second.end());
    return key;
}

// The decomposition as a set of copy keys; equal sets mean the same F-factor.
inline std::set<CopyKey> canonical_form(const Hypergraph& h, const FactorSpec& spec, const FactorDecomposition& d) {
    std::set<CopyKey> out;
    for (const auto& c : d.copies) out.insert(copy_key(h, spec, c));
    return out;
}

// Copies are vertex-disjoint, each maps E(F) into E(H), and together they
// cover `domain` (all of V(H) when empty) and nothing else.
inline bool verify_decomposition(const Hypergraph& h, const FactorSpec& spec, const FactorDecomposition& d,
                                 std::span<const Vertex> domain = {}) {
    std::vector<char> used(h.n(), 0);
    std::size_t covered = 0;
    std::array<Vertex, kMaxUniformity> buf;
    for (const auto& c : d.copies) {
        if (c.size() != spec.t()) return false;
        for (Vertex v : c) {
            if (v >= h.n() || used[v]) return false;
            used[v] = 1;
            ++covered;
        }
        for (std::size_t e = 0; e < spec.pattern.edge_count(); ++e) {
            auto pe = spec.pattern.edge(e);
            for (unsigned j = 0; j < h.k(); ++j) buf[j] = c[pe[j]];
            if (!h.contains_edge(std::span<const Vertex>(buf.data(), h.k()))) return false;
        }
    }
    if (domain.empty()) return covered == h.n();
    if (covered != domain.size()) return false;
    for (Vertex v : domain)
        if (v >= h.n() || !used[v]) return false;
    return true;
}

namespace detail {

// Backtracking over F-factors of H[domain]. The copy covering the smallest
// uncovered vertex u is branched on, one branch per distinct copy key, so
// every factor is reached exactly once.
class FactorSearch {
public:
    FactorSearch(const Hypergraph& h, const FactorSpec& spec, std::vector<Vertex> domain, NodeBudget& budget)
        : h_(h), spec_(spec), budget_(budget), uncovered_(VertexSet::of(h.n(), domain)), remaining_(domain.size()) {
        spec_.validate(h.k());
        if (domain.size() % spec.t() != 0)
            throw divisibility_error("|F| = " + std::to_string(spec.t()) + " does not divide " +
                                     std::to_string(domain.size()));
        // Pattern edges checked once their last vertex (in pattern order) is placed.
        edges_by_last_.resize(spec.t());
        for (std::size_t e = 0; e < spec.pattern.edge_count(); ++e) {
            auto pe = spec.pattern.edge(e);
            edges_by_last_[*std::max_element(pe.begin(), pe.end())].push_back(e);
        }
    }

    // f(decomposition) returns true to stop. Returns true if stopped.
    template <class F>
    bool run(F&& f) {
        return dfs(f);
    }

private:
    template <class F>
    bool dfs(F& f) {
        if (remaining_ == 0) return static_cast<bool>(f(FactorDecomposition{copies_}));
        const Vertex u = first_uncovered();
        std::vector<Vertex> others;
        uncovered_.for_each([&](Vertex v) {
            if (v != u) others.push_back(v);
        });
        const unsigned t = spec_.t();
        bool stop = false;
        for_each_combination(others, t - 1, [&](std::span<const Vertex> rest) {
            std::vector<Vertex> set{u};
            set.insert(set.end(), rest.begin(), rest.end());
            std::set<std::vector<std::uint64_t>> seen;
            std::vector<Vertex> image(t);
            std::vector<char> taken(t, 0);
            auto assign = [&](auto&& self, unsigned j) -> bool {
                if (j == t) {
                    auto key = copy_key(h_, spec_, image).second;
                    if (!seen.insert(std::move(key)).second) return false;
                    return branch(f, image);
                }
                for (unsigned x = 0; x < t; ++x) {
                    if (taken[x]) continue;
                    image[j] = set[x];
                    if (!edges_ok(image, j)) continue;
                    taken[x] = 1;
                    bool s = self(self, j + 1);
                    taken[x] = 0;
                    if (s) return true;
                }
                return false;
            };
            stop = assign(assign, 0);
            return !stop;
        });
        return stop;
    }

    Vertex first_uncovered() const {
        auto w = uncovered_.words();
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i]) return static_cast<Vertex>(i * 64 + static_cast<std::size_t>(std::countr_zero(w[i])));
        return 0;
    }

    bool edges_ok(const std::vector<Vertex>& image, unsigned j) const {
        std::array<Vertex, kMaxUniformity> buf;
        for (auto e : edges_by_last_[j]) {
            auto pe = spec_.pattern.edge(e);
            for (unsigned i = 0; i < h_.k(); ++i) buf[i] = image[pe[i]];
            if (!h_.contains_edge(std::span<const Vertex>(buf.data(), h_.k()))) return false;
        }
        return true;
    }

    template <class F>
    bool branch(F& f, const std::vector<Vertex>& image) {
        budget_.charge();
        for (Vertex v : image) uncovered_.erase(v);
        remaining_ -= image.size();
        copies_.push_back(image);
        bool stop = dfs(f);
        copies_.pop_back();
        remaining_ += image.size();
        for (Vertex v : image) uncovered_.insert(v);
        return stop;
    }

    const Hypergraph& h_;
    const FactorSpec& spec_;
    NodeBudget& budget_;
    VertexSet uncovered_;
    std::size_t remaining_;
    std::vector<std::vector<std::size_t>> edges_by_last_;
    std::vector<std::vector<Vertex>> copies_;
};

} // namespace detail

inline std::optional<FactorDecomposition> find_f_factor(const Hypergraph& h, const FactorSpec& spec,
                                                        std::uint64_t budget = kDefaultSearchBudget) {
    NodeBudget nodes(budget);
    detail::FactorSearch search(h, spec, iota_vertices(h.n()), nodes);
    std::optional<FactorDecomposition> found;
    search.run([&](FactorDecomposition d) {
        found = std::move(d);
        return true;
    });
    return found;
}

// Number of distinct F-factors, a factor being a set of copies and a copy
// being a vertex set with its image edges.
inline BigInt count_f_factors(const Hypergraph& h, const FactorSpec& spec,
                              std::uint64_t budget = kDefaultSearchBudget) {
    NodeBudget nodes(budget);
    detail::FactorSearch search(h, spec, iota_vertices(h.n()), nodes);
    BigInt count = 0;
    search.run([&](const FactorDecomposition&) {
        ++count;
        return false;
    });
    return count;
}

inline std::optional<FactorDecomposition> perfect_matching(const Hypergraph& h,
                                                           std::uint64_t budget = kDefaultSearchBudget) {
    if (h.n() % h.k() != 0) throw divisibility_error("perfect matching needs k | n");
    return find_f_factor(h, FactorSpec::single_edge(h.k()), budget);
}

// n! / ((k!)^{n/k} (n/k)!): perfect matchings of K_n^(k).
inline BigInt complete_matching_count(unsigned n, unsigned k) {
    if (k == 0 || n % k != 0) throw divisibility_error("matching count needs k | n");
    return factorial(n) / (pow(factorial(k), n / k) * factorial(n / k));
}

// An F-factor of each H[V_i], mapped back to global labels; nullopt if some block has none.
inline std::optional<FactorDecomposition> stitch_factor(const Hypergraph& h, const Partition& p,
                                                        const FactorSpec& spec,
                                                        std::uint64_t budget = kDefaultSearchBudget) {
    spec.validate(h.k());
    require_partition(h, p);
    for (const auto& b : p.blocks)
        if (b.size() % spec.t() != 0)
            throw divisibility_error("block of size " + std::to_string(b.size()) + " not divisible by |F|");
    FactorDecomposition out;
    for (const auto& b : p.blocks) {
        const auto sub = induced(h, b);
        auto local = find_f_factor(sub.graph, spec, budget);
        if (!local) return std::nullopt;
        for (const auto& c : local->copies) out.copies.push_back(sub.globalize(c));
    }
    return out;
}

// Disjoint random copies of F covering n vertices, plus noise edges.
inline Planted<FactorDecomposition> planted_factor(std::size_t n, const FactorSpec& spec, std::uint64_t seed,
                                                   double noise = 0.0) {
    const unsigned t = spec.t();
    if (t == 0 || n % t != 0) throw divisibility_error("planted factor needs |F| | n");
    const auto order = random_order(n, derive_seed(seed, "planted-order"));
    FactorDecomposition d;
    std::vector<std::vector<Vertex>> edges;
    for (std::size_t c = 0; c < n / t; ++c) {
        std::vector<Vertex> image(order.begin() + static_cast<std::ptrdiff_t>(c * t),
                                  order.begin() + static_cast<std::ptrdiff_t>((c + 1) * t));
        for (std::size_t e = 0; e < spec.pattern.edge_count(); ++e) {
            std::vector<Vertex> img;
            for (Vertex v : spec.pattern.edge(e)) img.push_back(image[v]);
            edges.push_back(std::move(img));
        }
        d.copies.push_back(std::move(image));
    }
    if (noise > 0) {
        auto extra = gen_random(n, spec.pattern.k(), noise, derive_seed(seed, "planted-noise")).edge_list();
        edges.insert(edges.end(), extra.begin(), extra.end());
    }
    return {Hypergraph(n, spec.pattern.k(), std::move(edges)), std::move(d)};
}

struct MatchingCycleRelation {
    BigInt matchings;
    BigInt zero_cycle_arrangements; // cyclic edge sequences up to rotation and reflection
    BigInt predicted;               // matchings * ((n/k) - 1)! / 2
    bool ratio_check = false;
};

// Counts perfect matchings, and separately counts cyclic arrangements of
// n/k disjoint edges (sequences with vertex 0 in the first edge, halved for
// reflection), then checks arrangements = matchings * ((n/k)-1)!/2.
inline MatchingCycleRelation matching_zero_cycle_relation(const Hypergraph& h,
                                                          std::uint64_t budget = kDefaultSearchBudget) {
    const unsigned k = h.k();
    if (h.n() % k != 0) throw divisibility_error("matching relation needs k | n");
    if (h.n() < 3 * std::size_t{k}) throw invalid_query("matching relation needs n >= 3k");
    MatchingCycleRelation out;
    out.matchings = count_f_factors(h, FactorSpec::single_edge(k), budget);

    NodeBudget nodes(budget);
    VertexSet free = VertexSet::full(h.n());
    BigInt sequences = 0;
    auto extend = [&](auto&& self, bool first) -> void {
        if (free.empty()) {
            ++sequences;
            return;
        }
        const auto pool = free.to_vector();
        for_each_combination(pool, k, [&](std::span<const Vertex> e) {
            if (first && e[0] != 0) return false;
            nodes.charge();
            if (!h.contains_edge(e)) return true;
            for (Vertex v : e) free.erase(v);
            self(self, false);
            for (Vertex v : e) free.insert(v);
            return true;
        });
    };
    extend(extend, true);
    out.zero_cycle_arrangements = sequences / 2;
    const unsigned m = static_cast<unsigned>(h.n() / k);
    out.predicted = out.matchings * factorial(m - 1) / 2;
    out.ratio_check = out.zero_cycle_arrangements == out.predicted && sequences % 2 == 0;
    return out;
}

inline json to_json(const FactorDecomposition& d) { return json{{"copies", d.copies}}; }

} // namespace hypercount

#endif // HYPERCOUNT_FACTORS_HPP
