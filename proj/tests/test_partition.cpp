#include <gtest/gtest.h>

#include <cmath>

#include "hypercount/hypercount.hpp"
#include "oracles.hpp"

using namespace hypercount;

namespace {

void expect_invariants(const SizeVector& sv, std::size_t n) {
    const auto r = sv.sizes.size();
    EXPECT_TRUE(r > 0 && (r & (r - 1)) == 0);
    std::size_t sum = 0;
    for (auto a : sv.sizes) {
        sum += a;
        EXPECT_GE(a, sv.m);
        EXPECT_LE(a, 5 * sv.m);
        EXPECT_EQ(a % sv.divisor, 0u);
        for (auto b : sv.sizes) EXPECT_LE(a > b ? a - b : b - a, 2u * sv.k);
    }
    EXPECT_EQ(sum, n);
}

// Any nondecreasing list of r multiples of divisor in [m, 5m], spread <= 2k,
// summing to n, with r the power of two where 2m <= n/r < 4m.
bool any_valid_composition(std::size_t n, std::size_t m, std::size_t divisor, unsigned k) {
    std::size_t r = 1;
    while (n >= 4 * m * r) r *= 2;
    std::vector<std::size_t> sizes;
    auto rec = [&](auto&& self, std::size_t left) -> bool {
        if (sizes.size() == r) return left == 0;
        const std::size_t from = sizes.empty() ? (m + divisor - 1) / divisor * divisor : sizes.back();
        for (std::size_t a = from; a <= left && a <= 5 * m; a += divisor) {
            if (!sizes.empty() && a - sizes.front() > 2 * k) break;
            sizes.push_back(a);
            const bool ok = self(self, left - a);
            sizes.pop_back();
            if (ok) return true;
        }
        return false;
    };
    return rec(rec, n);
}

Partition blocks_of_size(std::size_t n, std::size_t size) {
    std::vector<std::vector<Vertex>> blocks(n / size);
    for (Vertex v = 0; v < n; ++v) blocks[v / size].push_back(v);
    return Partition{blocks};
}

} // namespace

TEST(SizeVector, Examples) {
    const auto a = size_vector(96, 6, 1, 3);
    EXPECT_EQ(a.sizes, std::vector<std::size_t>(8, 12));
    EXPECT_EQ(a.levels(), 3u);
    const auto b = size_vector(96, 6, 2, 3);
    EXPECT_EQ(b.sizes, a.sizes);
    const auto c = size_vector(100, 6, 1, 3);
    ASSERT_EQ(c.sizes.size(), 8u);
    EXPECT_EQ(std::count(c.sizes.begin(), c.sizes.end(), 13u), 4);
    EXPECT_EQ(std::count(c.sizes.begin(), c.sizes.end(), 12u), 4);
}

TEST(SizeVector, GridSatisfiesInvariants) {
    std::size_t built = 0;
    for (std::size_t n = 4; n <= 400; ++n)
        for (std::size_t m : {1u, 2u, 3u, 6u, 10u})
            for (unsigned k = 2; k <= 5; ++k)
                for (std::size_t divisor = 1; divisor < k; ++divisor) {
                    if (n % divisor != 0 || n < 2 * m) continue;
                    std::optional<SizeVector> sv;
                    try {
                        sv = size_vector(n, m, divisor, k);
                    } catch (const construction_error&) {
                        // only when no composition at that level works
                        if (n <= 40) {
                            EXPECT_FALSE(any_valid_composition(n, m, divisor, k)) << n << " " << m;
                        }
                        continue;
                    }
                    expect_invariants(*sv, n);
                    ++built;
                }
    EXPECT_GT(built, 1000u);
}

TEST(SizeVector, Errors) {
    EXPECT_THROW(size_vector(10, 6, 1, 3), construction_error);
    EXPECT_THROW(size_vector(97, 6, 2, 3), construction_error);
    EXPECT_THROW(size_vector(96, 0, 1, 3), construction_error);
    try {
        size_vector(10, 6, 1, 3);
    } catch (const construction_error& e) {
        EXPECT_NE(std::string(e.what()).find("2m"), std::string::npos);
    }
}

TEST(EventThreshold, Examples) {
    const auto a = event_threshold(Rational(1, 2), Rational(1, 10), 10000);
    EXPECT_FALSE(a.clamped);
    EXPECT_TRUE(a.exact());
    EXPECT_EQ(a.lower, Rational(4000));
    const auto b = event_threshold(Rational(1, 2), Rational(1, 10), 16);
    EXPECT_TRUE(b.clamped);
    EXPECT_EQ(b.upper, Rational(0));
    for (std::size_t m : {1u, 5u, 81u, 1000u}) EXPECT_TRUE(event_threshold(Rational(0), Rational(0), m).clamped);
    EXPECT_THROW(event_threshold(Rational(1, 2), Rational(1, 10), 0), invalid_query);
}

TEST(EventThreshold, BracketContainsTrueValue) {
    // 0.8 - 2 m^(-1/4) turns positive just below m = 40
    EXPECT_TRUE(event_threshold(Rational(7, 10), Rational(1, 10), 17).clamped);
    for (std::size_t m : {40u, 50u, 99u, 300u, 1234u, 20000u}) {
        const auto br = event_threshold(Rational(7, 10), Rational(1, 10), m);
        ASSERT_FALSE(br.clamped);
        const double truth = (0.8 - 2 * std::pow(static_cast<double>(m), -0.25)) * static_cast<double>(m);
        EXPECT_LE(to_double(br.lower), truth + 1e-9);
        EXPECT_GE(to_double(br.upper), truth - 1e-9);
        EXPECT_LT(to_double(br.upper - br.lower), 1e-12);
    }
}

TEST(IntegerRoot, FloorOfRoot) {
    for (unsigned q : {2u, 3u, 4u})
        for (std::uint64_t x = 0; x < 5000; x += 7) {
            const BigInt r = integer_root(BigInt(x), q);
            EXPECT_LE(pow(r, q), BigInt(x));
            EXPECT_GT(pow(r + 1, q), BigInt(x));
        }
}

TEST(Bisection, CompleteHostAllEventsHold) {
    const auto h = Hypergraph::complete(96, 3);
    const auto sv = size_vector(96, 6, 1, 3);
    const auto res = random_bisection(h, sv, GoodnessSpec{Rational(1, 2), Rational(3, 10)}, 11);
    EXPECT_TRUE(trace_is_consistent(res.trace, sv));
    for (unsigned i = 0; i <= res.trace.s; ++i) EXPECT_TRUE(res.trace.level_holds(i)) << "level " << i;
    EXPECT_EQ(res.partition.sizes(), sv.sizes);
}

TEST(Bisection, EdgelessHostFailsUnclampedEvents) {
    const auto h = Hypergraph::empty(96, 3);
    const auto sv = size_vector(96, 6, 1, 3);
    const auto res = random_bisection(h, sv, GoodnessSpec{Rational(1, 2), Rational(3, 10)}, 2);
    std::size_t unclamped = 0;
    for (const auto& level : res.trace.levels)
        for (const auto& b : level) {
            EXPECT_EQ(b.event, b.clamped);
            unclamped += !b.clamped;
        }
    EXPECT_GT(unclamped, 0u);
}

TEST(Bisection, SeedDeterminism) {
    const auto h = gen_random(48, 3, 0.8, 1);
    const auto sv = size_vector(48, 6, 1, 3);
    const GoodnessSpec spec{Rational(1, 2), Rational(1, 5)};
    const auto a = random_bisection(h, sv, spec, 99);
    const auto b = random_bisection(h, sv, spec, 99);
    const auto c = random_bisection(h, sv, spec, 100);
    EXPECT_EQ(a.partition, b.partition);
    EXPECT_EQ(to_json(a.trace).dump(), to_json(b.trace).dump());
    EXPECT_NE(a.partition, c.partition);
}

TEST(Bisection, PartitionCoversAndMatchesSizes) {
    const auto h = gen_random(100, 3, 0.5, 3);
    const auto sv = size_vector(100, 6, 1, 3);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto res = random_bisection(h, sv, GoodnessSpec{Rational(1, 2), Rational(1, 5)}, seed);
        std::vector<int> seen(100, 0);
        for (const auto& b : res.partition.blocks)
            for (auto v : b) ++seen[v];
        EXPECT_EQ(std::count(seen.begin(), seen.end(), 1), 100);
        EXPECT_EQ(res.partition.sizes(), sv.sizes);
        EXPECT_TRUE(trace_is_consistent(res.trace, sv));
    }
}

TEST(Bisection, SizeMismatchIsAConstructionError) {
    EXPECT_THROW(random_bisection(Hypergraph::complete(40, 3), size_vector(48, 6, 1, 3),
                                  GoodnessSpec{Rational(1, 2), Rational(1, 5)}, 0),
                 construction_error);
}

TEST(Bisection, SplitsAreUniform) {
    // Each vertex lands in the first of two blocks of 6 (out of 12) with probability 1/2.
    const auto h = Hypergraph::empty(12, 2);
    const auto sv = size_vector(12, 3, 1, 2);
    ASSERT_EQ(sv.sizes, (std::vector<std::size_t>{6, 6}));
    std::vector<int> first(12, 0);
    const int trials = 4000;
    for (int t = 0; t < trials; ++t) {
        const auto res = random_bisection(h, sv, GoodnessSpec{Rational(1, 2), Rational(1, 5)}, t);
        for (auto v : res.partition.blocks[0]) ++first[v];
    }
    for (int c : first) EXPECT_NEAR(c / double(trials), 0.5, 0.04);
}

TEST(CheckGood, CompleteHostIsGood) {
    const auto h = Hypergraph::complete(24, 3);
    const auto p = blocks_of_size(24, 6);
    // 1 - (k-1)/min|V_i| = 2/3
    EXPECT_TRUE(check_good(h, p, Rational(2, 3)).good());
    EXPECT_FALSE(check_good(h, p, Rational(3, 4)).good());
}

TEST(CheckGood, EdgelessReportsViolation) {
    const auto r = check_good(Hypergraph::empty(12, 3), blocks_of_size(12, 6), Rational(1, 10));
    EXPECT_FALSE(r.good());
    ASSERT_FALSE(r.violations.empty());
    EXPECT_EQ(r.violations.front().block, 0u);
    EXPECT_EQ(r.min_ratio, Rational(0));
}

TEST(CheckGood, PlantedSetMatchesExhaustiveCheck) {
    const std::size_t n = 32;
    const auto p = blocks_of_size(n, 8); // four blocks
    const std::vector<Vertex> ustar{9, 14}; // inside V_2, neighbouring V_1
    std::vector<std::vector<Vertex>> edges;
    for (const auto& e : Hypergraph::complete(n, 3).edge_list()) {
        const bool hits = std::includes(e.begin(), e.end(), ustar.begin(), ustar.end());
        const Vertex third = e[0] != 9 && e[0] != 14 ? e[0] : e[1] != 9 && e[1] != 14 ? e[1] : e[2];
        if (hits && third < 8) continue;
        edges.push_back(e);
    }
    const Hypergraph h(n, 3, edges);
    const auto es = oracle::edges_of(h);
    const Rational delta(1, 2);
    std::vector<std::pair<std::size_t, std::vector<Vertex>>> expected;
    for (std::size_t i = 0; i < 4; ++i) {
        std::vector<Vertex> w;
        for (std::size_t j : {(i + 3) % 4, i, (i + 1) % 4}) w.insert(w.end(), p.blocks[j].begin(), p.blocks[j].end());
        std::sort(w.begin(), w.end());
        for (const auto& idx : oracle::subsets(static_cast<unsigned>(w.size()), 2)) {
            const std::vector<Vertex> u{w[idx[0]], w[idx[1]]};
            if (Rational(oracle::degree(es, u, p.blocks[i])) < delta * 8) expected.emplace_back(i, u);
        }
    }
    ASSERT_EQ(expected.size(), 1u);
    EXPECT_EQ(expected[0].first, 0u);
    EXPECT_EQ(expected[0].second, ustar);
    const auto r = check_good(h, p, delta, std::nullopt, 100);
    EXPECT_FALSE(r.good());
    ASSERT_EQ(r.violation_count, 1u);
    EXPECT_EQ(r.violations[0].block, 0u);
    EXPECT_EQ(r.violations[0].set, ustar);
    EXPECT_EQ(r.violations[0].degree, 0u);
}

TEST(CheckGood, MonotoneInDelta) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto h = gen_random(24, 3, 0.7, seed);
        const auto p = blocks_of_size(24, 6);
        const auto r = check_good(h, p, Rational(0));
        ASSERT_TRUE(r.min_ratio);
        for (int num = 0; num <= 10; ++num) {
            const Rational d(num, 10);
            if (check_good(h, p, d).good()) {
                for (int lower = 0; lower < num; ++lower) EXPECT_TRUE(check_good(h, p, Rational(lower, 10)).good());
            }
        }
        EXPECT_TRUE(check_good(h, p, *r.min_ratio).good());
    }
}

TEST(CheckGood, SizeVectorMismatchFailsP1) {
    const auto h = Hypergraph::complete(24, 3);
    const auto sv = size_vector(24, 3, 1, 3);
    EXPECT_EQ(sv.sizes, (std::vector<std::size_t>{6, 6, 6, 6}));
    EXPECT_TRUE(check_good(h, blocks_of_size(24, 6), Rational(1, 2), sv).good());
    EXPECT_FALSE(check_good(h, blocks_of_size(24, 12), Rational(1, 2), sv).good());
    EXPECT_THROW(check_good(h, Partition{{{0, 1}, {1, 2}}}, Rational(1, 2)), invalid_query);
}

TEST(CheckGoodFactor, Examples) {
    const auto p = blocks_of_size(24, 12);
    // complete blocks of 12: C(11,2)/C(12,2) and C(10,1)/C(12,1)
    const Rational full[] = {Rational(55, 66), Rational(10, 12)};
    for (unsigned d = 1; d <= 2; ++d) {
        const auto r = check_good_factor(Hypergraph::complete(24, 3), p, d, Rational(4, 5));
        EXPECT_TRUE(r.good());
        EXPECT_EQ(*r.min_ratio, full[d - 1]);
        EXPECT_FALSE(check_good_factor(Hypergraph::complete(24, 3), p, d, Rational(6, 7)).good());
        EXPECT_FALSE(check_good_factor(Hypergraph::empty(24, 3), p, d, Rational(1, 100)).good());
    }
    EXPECT_THROW(check_good_factor(Hypergraph::complete(24, 3), p, 0, Rational(1, 2)), invalid_query);
    EXPECT_THROW(check_good_factor(Hypergraph::complete(24, 3), p, 3, Rational(1, 2)), invalid_query);
}

TEST(CheckGoodFactor, MinRatioMatchesOracle) {
    const auto h = gen_random(60, 3, 0.9, 5);
    const auto p = blocks_of_size(60, 12);
    const auto r = check_good_factor(h, p, 1, Rational(1, 2));
    ASSERT_TRUE(r.min_ratio);
    Rational expected = 1;
    for (const auto& block : p.blocks) {
        const auto sub = induced(h, block);
        const auto md = oracle::min_d_degree(oracle::edges_of(sub.graph), 12, 1);
        expected = std::min(expected, Rational(md, 66));
    }
    EXPECT_EQ(*r.min_ratio, expected);
    EXPECT_EQ(r.good(), expected >= Rational(1, 2));
    // a complete block gives 55/66
    EXPECT_NEAR(to_double(*r.min_ratio), 0.9 * 55 / 66, 0.15);
}

TEST(Hypergeometric, BoundExamples) {
    EXPECT_NEAR(hypergeometric_tail_bound({100, 50, 50, 10}), 2 * std::exp(-4.0), 1e-12);
    EXPECT_NEAR(hypergeometric_tail_bound({100, 50, 50, 0.5}), 2 * std::exp(-0.01), 1e-12);
    EXPECT_NEAR(hypergeometric_tail_bound({100, 50, 50, 1e-9}), 2.0, 1e-9);
    EXPECT_NEAR(hypergeometric_tail_bound({60, 30, 30, 5}), 0.3777, 1e-4);
    EXPECT_THROW(hypergeometric_tail_bound({10, 11, 3, 1}), invalid_query);
    EXPECT_THROW(hypergeometric_tail_bound({10, 5, 3, 0}), invalid_query);
}

TEST(Hypergeometric, BoundDominatesExactTail) {
    for (unsigned N : {20u, 40u, 60u})
        for (unsigned n : {N / 4, N / 2})
            for (unsigned m : {N / 5, N / 2})
                for (int t = 1; t <= 6; ++t) {
                    const double bound = hypergeometric_tail_bound({N, n, m, double(t)});
                    const Rational exact = oracle::hypergeometric_tail(N, n, m, Rational(t));
                    EXPECT_LE(to_double(exact), bound) << N << " " << n << " " << m << " " << t;
                }
}

TEST(Hypergeometric, EmpiricalTailNearExact) {
    const auto est = estimate_tail({60, 30, 30, 5}, 20000, 4);
    const double exact = to_double(oracle::hypergeometric_tail(60, 30, 30, Rational(5)));
    EXPECT_NEAR(est.frequency, exact, 0.02);
    EXPECT_LE(est.frequency, est.bound);
}

TEST(GoodProbability, CompleteAndEdgeless) {
    const auto sv = size_vector(48, 6, 1, 3);
    const GoodnessSpec spec{Rational(1, 2), Rational(1, 5)};
    const auto full = estimate_good_probability(Hypergraph::complete(48, 3), sv, spec, 20, 1);
    EXPECT_EQ(full.fraction, 1.0);
    EXPECT_EQ(full.inconsistent_traces, 0u);
    const auto none = estimate_good_probability(Hypergraph::empty(48, 3), sv, spec, 20, 1);
    EXPECT_EQ(none.fraction, 0.0);
    EXPECT_LE(none.interval.lower, 0.0);
}

TEST(GoodProbability, WorkersDoNotChangeResult) {
    const auto h = gen_random(36, 3, 0.9, 7);
    const auto sv = size_vector(36, 6, 1, 3);
    const GoodnessSpec spec{Rational(1, 2), Rational(1, 5)};
    const auto a = estimate_good_probability(h, sv, spec, 40, 3, 1);
    const auto b = estimate_good_probability(h, sv, spec, 40, 3, 4);
    EXPECT_EQ(a.good, b.good);
    ASSERT_EQ(a.levels.size(), b.levels.size());
    for (std::size_t i = 0; i < a.levels.size(); ++i) EXPECT_EQ(a.levels[i].both, b.levels[i].both);
}

TEST(GoodProbability, BinomialSmallBlocks) {
    // Blocks of 18 out of 36 at p = 0.9 are usually good at delta + gamma/2 = 0.6.
    const auto h = gen_random(36, 3, 0.9, 1);
    const auto sv = size_vector(36, 6, 1, 3);
    const auto est = estimate_good_probability(h, sv, GoodnessSpec{Rational(1, 2), Rational(1, 5)}, 200, 9);
    EXPECT_GT(est.fraction, 0.0);
    EXPECT_EQ(est.inconsistent_traces, 0u);
    EXPECT_LE(est.interval.lower, est.fraction);
    EXPECT_GE(est.interval.upper, est.fraction);
}

TEST(Wilson, KnownValues) {
    const auto w = wilson_interval(50, 100);
    EXPECT_NEAR(w.lower, 0.4038, 1e-3);
    EXPECT_NEAR(w.upper, 0.5962, 1e-3);
    EXPECT_NEAR(wilson_interval(0, 10).lower, 0.0, 1e-12);
    EXPECT_NEAR(wilson_interval(10, 10).upper, 1.0, 1e-12);
}
