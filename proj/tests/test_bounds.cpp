#include <gtest/gtest.h>

#include <cmath>

#include "hypercount/hypercount.hpp"
#include "oracles.hpp"

using namespace hypercount;

TEST(Multinomial, Examples) {
    EXPECT_EQ(multinomial(4, {2, 2}), 6);
    EXPECT_EQ(multinomial(9, {9}), 1);
    EXPECT_EQ(multinomial(8, {4, 4}), 70);
    EXPECT_THROW(multinomial(8, {4, 3}), invalid_query);
}

TEST(Multinomial, TimesFactorialsIsNFactorial) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Rng rng(seed);
        const std::size_t parts = 1 + uniform_below(rng, 5);
        std::vector<std::size_t> sizes;
        std::size_t n = 0;
        for (std::size_t i = 0; i < parts; ++i) {
            sizes.push_back(uniform_below(rng, 12));
            n += sizes.back();
        }
        BigInt prod = multinomial(n, sizes);
        for (auto s : sizes) prod *= oracle::big_factorial(static_cast<unsigned>(s));
        EXPECT_EQ(prod, oracle::big_factorial(static_cast<unsigned>(n)));
    }
}

TEST(CycleCountBound, Examples) {
    const auto b = theorem_bound(8, Rational(2));
    ASSERT_TRUE(b.log_value);
    const double expected = 8 * std::log(8.0) - 16;
    EXPECT_NEAR(expected, 0.6355, 1e-4);
    EXPECT_LE(to_double(b.log_value->lo), expected + 1e-12);
    EXPECT_GE(to_double(b.log_value->hi), expected - 1e-12);
    EXPECT_LT(to_double(b.log_value->width()), 1e-15);
    const auto t = theorem_bound(8, Rational(2), 8u);
    EXPECT_NEAR(to_double(t.log_value->lo), 7 * std::log(8.0) - 16, 1e-12);
    EXPECT_THROW(theorem_bound(0, Rational(1)), invalid_query);
    EXPECT_THROW(theorem_bound(8, Rational(-1)), invalid_query);
}

TEST(CycleCountBound, BelowBruteForceCount) {
    const BigInt k5 = oracle::hamilton_cycle_count(oracle::edges_of(Hypergraph::complete(5, 2)), 5, 2, 1);
    ASSERT_EQ(k5, 12);
    const auto b = theorem_bound(5, Rational(3));
    EXPECT_TRUE(b.certainly_at_most(Rational(k5)));
    EXPECT_LT(to_double(b.log_value->hi), std::log(12.0));
}

TEST(CycleCountBound, PrecisionNests) {
    for (std::size_t n : {3u, 8u, 50u, 1000u}) {
        const auto lo = theorem_bound(n, Rational(3, 2), std::nullopt, 32);
        const auto hi = theorem_bound(n, Rational(3, 2), std::nullopt, 96);
        EXPECT_TRUE(lo.log_value->contains(*hi.log_value)) << n;
        EXPECT_LE(hi.log_value->width(), lo.log_value->width());
    }
}

TEST(Brackets, ExpAndLogContainDoubles) {
    for (unsigned n : {1u, 4u, 8u, 20u, 36u, 100u}) {
        const auto e = exp_neg(n);
        EXPECT_LE(to_double(e.lo), std::exp(-double(n)) * (1 + 1e-12));
        EXPECT_GE(to_double(e.hi), std::exp(-double(n)) * (1 - 1e-12));
        EXPECT_TRUE(exp_neg(n, 32).contains(exp_neg(n, 96)));
    }
    for (auto x : {Rational(1, 3), Rational(2), Rational(7, 2), Rational(1000)}) {
        const auto l = log_bracket(x);
        EXPECT_NEAR(to_double(l.midpoint()), std::log(to_double(x)), 1e-12);
        EXPECT_TRUE(l.contains(log_bracket(x, 100).midpoint()));
    }
    EXPECT_THROW(log_bracket(Rational(0)), invalid_query);
}

TEST(ExpectedRandomCount, Examples) {
    const auto a = expected_random_count(5, 2, 1, Rational(1));
    ASSERT_TRUE(a.exact_value);
    EXPECT_EQ(*a.exact_value, Rational(12));
    const auto b = expected_random_count(5, 2, 1, Rational(1, 2));
    EXPECT_EQ(*b.exact_value, Rational(3, 8));
    EXPECT_EQ(*expected_random_count(5, 2, 1, Rational(0)).exact_value, Rational(0));
    EXPECT_TRUE(b.value->contains(Rational(3, 8)));
}

TEST(ExpectedRandomCount, MonotoneInDelta) {
    Rational prev = -1;
    for (int num = 0; num <= 10; ++num) {
        const auto v = *expected_random_count(6, 3, 2, Rational(num, 10)).exact_value;
        EXPECT_GE(v, prev);
        prev = v;
    }
    const BigInt k63 = oracle::hamilton_cycle_count(oracle::edges_of(Hypergraph::complete(6, 3)), 6, 3, 2);
    EXPECT_EQ(*expected_random_count(6, 3, 2, Rational(1)).exact_value, Rational(k63));
    EXPECT_THROW(expected_random_count(7, 3, 1, Rational(1, 2)), divisibility_error);
}

TEST(FactorBound, MultiplicityBound) {
    EXPECT_EQ(partition_multiplicity_bound(12, 3), 256);
    EXPECT_THROW(partition_multiplicity_bound(10, 3), divisibility_error);
}
