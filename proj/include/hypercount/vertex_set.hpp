#ifndef HYPERCOUNT_VERTEX_SET_HPP
#define HYPERCOUNT_VERTEX_SET_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hypercount/combinatorics.hpp"

namespace hypercount {

// Fixed-universe bitset over vertices 0..universe-1.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

    static VertexSet of(std::size_t universe, std::span<const Vertex> vertices) {
        VertexSet s(universe);
        for (Vertex v : vertices) s.insert(v);
        return s;
    }

    static VertexSet full(std::size_t universe) {
        VertexSet s(universe);
        for (std::size_t v = 0; v < universe; ++v) s.insert(static_cast<Vertex>(v));
        return s;
    }

    std::size_t universe() const { return universe_; }
    std::size_t word_count() const { return words_.size(); }
    std::span<const std::uint64_t> words() const { return words_; }
    std::span<std::uint64_t> words() { return words_; }

    void insert(Vertex v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
    void erase(Vertex v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
    bool contains(Vertex v) const {
        return v < universe_ && (words_[v >> 6] >> (v & 63)) & 1;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    std::size_t intersect_count(std::span<const std::uint64_t> other) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(words_[i] & other[i]));
        return c;
    }
    std::size_t intersect_count(const VertexSet& other) const { return intersect_count(other.words()); }

    bool intersects(std::span<const std::uint64_t> other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other[i]) return true;
        return false;
    }

    VertexSet& operator&=(std::span<const std::uint64_t> other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other[i];
        return *this;
    }
    VertexSet& operator&=(const VertexSet& other) { return *this &= other.words(); }
    VertexSet& operator|=(const VertexSet& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }
    VertexSet& operator-=(const VertexSet& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
        return *this;
    }

    friend bool operator==(const VertexSet&, const VertexSet&) = default;

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t w = words_[i];
            while (w) {
                f(static_cast<Vertex>(i * 64 + static_cast<std::size_t>(std::countr_zero(w))));
                w &= w - 1;
            }
        }
    }

    std::vector<Vertex> to_vector() const {
        std::vector<Vertex> out;
        for_each([&](Vertex v) { out.push_back(v); });
        return out;
    }

private:
    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace hypercount

#endif // HYPERCOUNT_VERTEX_SET_HPP
