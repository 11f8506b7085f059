#ifndef HYPERCOUNT_SEARCH_HPP
#define HYPERCOUNT_SEARCH_HPP

#include <array>
#include <atomic>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypercount/hypergraph.hpp"

namespace hypercount {

inline constexpr std::uint64_t kDefaultSearchBudget = 50'000'000;

// Shared node counter for exhaustive searches. Exceeding the limit throws
// budget_exhausted; searches never report partial results.
class NodeBudget {
public:
    explicit NodeBudget(std::uint64_t limit) : limit_(limit) {}
    NodeBudget(const NodeBudget&) = delete;
    NodeBudget& operator=(const NodeBudget&) = delete;

    void charge() {
        if (used_.fetch_add(1, std::memory_order_relaxed) + 1 > limit_)
            throw budget_exhausted("search budget of " + std::to_string(limit_) + " nodes exhausted");
    }
    std::uint64_t used() const { return used_.load(std::memory_order_relaxed); }
    std::uint64_t limit() const { return limit_; }

private:
    std::uint64_t limit_;
    std::atomic<std::uint64_t> used_{0};
};

namespace detail {

// Positions 0..length-1 and the position lists that must map to edges.
struct SearchLayout {
    std::size_t length = 0;
    unsigned k = 2;
    std::vector<std::vector<std::size_t>> windows;
};

inline SearchLayout path_layout(std::size_t length, unsigned k, unsigned ell) {
    SearchLayout layout{length, k, {}};
    for (std::size_t s = 0; s + k <= length; s += k - ell) {
        std::vector<std::size_t> w(k);
        for (unsigned i = 0; i < k; ++i) w[i] = s + i;
        layout.windows.push_back(std::move(w));
    }
    return layout;
}

inline SearchLayout cycle_layout(std::size_t length, unsigned k, unsigned ell) {
    SearchLayout layout{length, k, {}};
    for (std::size_t s = 0; s < length; s += k - ell) {
        std::vector<std::size_t> w(k);
        for (unsigned i = 0; i < k; ++i) w[i] = (s + i) % length;
        layout.windows.push_back(std::move(w));
    }
    return layout;
}

// Depth-first filling of the free positions of a layout, in increasing
// position order, with vertices from `pool`. A position that completes a
// window only tries the codegree neighbourhood of the window's other k-1
// vertices; a window left with a single open slot is pruned when its k-1
// placed vertices have no completion among the unused pool vertices.
class OrderingSearch {
public:
    OrderingSearch(const Hypergraph& h, const SearchLayout& layout, std::vector<std::optional<Vertex>> fixed,
                   const VertexSet& pool, NodeBudget& budget)
        : h_(h), budget_(budget), order_(layout.length, 0), available_(pool) {
        std::vector<std::ptrdiff_t> free_index(layout.length, -1);
        for (std::size_t p = 0; p < layout.length; ++p) {
            if (fixed[p]) {
                order_[p] = *fixed[p];
            } else {
                free_index[p] = static_cast<std::ptrdiff_t>(free_.size());
                free_.push_back(p);
            }
        }
        complete_at_.resize(free_.size());
        lookahead_at_.resize(free_.size());
        for (const auto& w : layout.windows) {
            std::vector<std::size_t> open;
            for (auto p : w)
                if (free_index[p] >= 0) open.push_back(p);
            std::sort(open.begin(), open.end());
            if (open.empty()) {
                fixed_windows_.push_back(w);
                continue;
            }
            std::vector<std::size_t> others;
            for (auto p : w)
                if (p != open.back()) others.push_back(p);
            complete_at_[static_cast<std::size_t>(free_index[open.back()])].push_back(others);
            if (open.size() >= 2)
                lookahead_at_[static_cast<std::size_t>(free_index[open[open.size() - 2]])].push_back(others);
        }
        scratch_.assign(free_.size() + 1, VertexSet(h.n()));
    }

    // Limits the vertex tried at the first free position.
    void restrict_first(const VertexSet& allowed) { first_filter_ = allowed; }

    // Candidates for the first free position, before restriction.
    std::vector<Vertex> first_candidates() {
        if (free_.empty()) return {};
        candidates(0, scratch_[0]);
        return scratch_[0].to_vector();
    }

    // Calls on_complete(order) for each completed ordering until it returns
    // true. Returns true when stopped that way.
    template <class F>
    bool run(F&& on_complete) {
        for (const auto& w : fixed_windows_)
            if (!window_is_edge(w)) return false;
        return dfs(0, on_complete);
    }

private:
    bool window_is_edge(const std::vector<std::size_t>& w) const {
        std::array<Vertex, kMaxUniformity> buf{};
        for (std::size_t i = 0; i < w.size(); ++i) buf[i] = order_[w[i]];
        return h_.contains_edge(std::span<const Vertex>(buf.data(), w.size()));
    }

    void candidates(std::size_t idx, VertexSet& cand) const {
        cand = available_;
        std::array<Vertex, kMaxUniformity> buf{};
        for (const auto& others : complete_at_[idx]) {
            for (std::size_t i = 0; i < others.size(); ++i) buf[i] = order_[others[i]];
            std::span<const Vertex> u(buf.data(), others.size());
            if (const auto* words = h_.completion_words(u)) {
                cand &= std::span<const std::uint64_t>(words, cand.word_count());
            } else {
                VertexSet keep(h_.n());
                cand.for_each([&](Vertex v) {
                    buf[others.size()] = v;
                    if (h_.contains_edge(std::span<const Vertex>(buf.data(), others.size() + 1))) keep.insert(v);
                });
                cand = keep;
            }
        }
    }

    bool lookahead_ok(std::size_t idx) const {
        std::array<Vertex, kMaxUniformity> buf{};
        for (const auto& others : lookahead_at_[idx]) {
            for (std::size_t i = 0; i < others.size(); ++i) buf[i] = order_[others[i]];
            if (!h_.has_completion(std::span<const Vertex>(buf.data(), others.size()), available_)) return false;
        }
        return true;
    }

    template <class F>
    bool dfs(std::size_t idx, F& on_complete) {
        if (idx == free_.size()) return static_cast<bool>(on_complete(std::span<const Vertex>(order_)));
        VertexSet& cand = scratch_[idx];
        candidates(idx, cand);
        if (idx == 0 && first_filter_) cand &= *first_filter_;
        const std::size_t p = free_[idx];
        auto words = cand.words();
        for (std::size_t wi = 0; wi < words.size(); ++wi) {
            std::uint64_t w = words[wi];
            while (w) {
                const auto v = static_cast<Vertex>(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
                budget_.charge();
                order_[p] = v;
                available_.erase(v);
                bool stop = lookahead_ok(idx) && dfs(idx + 1, on_complete);
                available_.insert(v);
                if (stop) return true;
            }
        }
        return false;
    }

    const Hypergraph& h_;
    NodeBudget& budget_;
    std::vector<Vertex> order_;
    VertexSet available_;
    std::vector<std::size_t> free_;
    std::vector<std::vector<std::size_t>> fixed_windows_;
    std::vector<std::vector<std::vector<std::size_t>>> complete_at_;
    std::vector<std::vector<std::vector<std::size_t>>> lookahead_at_;
    std::vector<VertexSet> scratch_;
    std::optional<VertexSet> first_filter_;
};

} // namespace detail
} // namespace hypercount

#endif // HYPERCOUNT_SEARCH_HPP
