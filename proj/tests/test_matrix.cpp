#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "trop/minplus.hpp"

using namespace trop;

TEST(MinplusNaive, TropicalIdentityIsNeutral) {
    std::mt19937_64 rng(1);
    IntMatrix a = oracle::random_matrix(rng, 5, 5, -9, 9, 0.2);
    EXPECT_EQ(minplus_naive(a, IntMatrix::tropical_identity(5)), a);
    EXPECT_EQ(minplus_naive(IntMatrix::tropical_identity(5), a), a);
}

TEST(MinplusNaive, SmallHandExample) {
    IntMatrix a{{0, 1}, {2, 3}};
    IntMatrix expected(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) expected(i, j) = std::min(a(i, 0) + a(0, j), a(i, 1) + a(1, j));
    EXPECT_EQ(minplus_naive(a, a), expected);
    EXPECT_EQ(expected, (IntMatrix{{0, 1}, {2, 3}}));
}

TEST(MinplusNaive, InfRowStaysInf) {
    IntMatrix a{{kInf, kInf}, {1, 2}};
    IntMatrix b{{3, 4}, {5, 6}};
    IntMatrix c = minplus_naive(a, b);
    EXPECT_EQ(c(0, 0), kInf);
    EXPECT_EQ(c(0, 1), kInf);
    EXPECT_EQ(c(1, 0), 4);
}

TEST(MinplusNaive, MatchesOracleAndHasWitnesses) {
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 20; ++rep) {
        IntMatrix a = oracle::random_matrix(rng, 7, 9, -20, 20, 0.3);
        IntMatrix b = oracle::random_matrix(rng, 9, 6, -20, 20, 0.3);
        IntMatrix c = minplus_naive(a, b);
        ASSERT_EQ(c, oracle::minplus(a, b));
        for (std::size_t i = 0; i < c.rows(); ++i)
            for (std::size_t j = 0; j < c.cols(); ++j) {
                if (c(i, j) == kInf) continue;
                bool witness = false;
                for (std::size_t k = 0; k < a.cols(); ++k)
                    witness |= a(i, k) != kInf && b(k, j) != kInf && a(i, k) + b(k, j) == c(i, j);
                EXPECT_TRUE(witness);
            }
    }
}

TEST(MinplusNaive, Associative) {
    std::mt19937_64 rng(3);
    IntMatrix a = oracle::random_matrix(rng, 6, 6, -9, 9, 0.2);
    IntMatrix b = oracle::random_matrix(rng, 6, 6, -9, 9, 0.2);
    IntMatrix c = oracle::random_matrix(rng, 6, 6, -9, 9, 0.2);
    EXPECT_EQ(minplus_naive(minplus_naive(a, b), c), minplus_naive(a, minplus_naive(b, c)));
}

TEST(MaxplusNaive, Examples) {
    EXPECT_EQ(maxplus_naive(IntMatrix{{1}}, IntMatrix{{2}}), (IntMatrix{{3}}));
    IntMatrix a{{0, 5}, {1, 0}};
    IntMatrix b{{0, 0}, {0, 0}};
    IntMatrix expected(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) expected(i, j) = std::max(a(i, 0) + b(0, j), a(i, 1) + b(1, j));
    EXPECT_EQ(maxplus_naive(a, b), expected);
}

TEST(MaxplusNaive, DualOfMinplus) {
    std::mt19937_64 rng(4);
    IntMatrix a = oracle::random_matrix(rng, 5, 7, -30, 30);
    IntMatrix b = oracle::random_matrix(rng, 7, 4, -30, 30);
    EXPECT_EQ(maxplus_naive(a, b), negate(minplus_naive(negate(a), negate(b))));
}

TEST(MinplusBounded, AllZero) {
    IntMatrix z(4, 4, 0);
    EXPECT_EQ(minplus_bounded(z, z, 1), z);
}

TEST(MinplusBounded, MatchesOracleWithInf) {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 200; ++rep) {
        IntMatrix a = oracle::random_matrix(rng, 16, 16, -3, 3, 0.15);
        IntMatrix b = oracle::random_matrix(rng, 16, 16, -3, 3, 0.15);
        ASSERT_EQ(minplus_bounded(a, b, 3), oracle::minplus(a, b));
    }
}

TEST(MinplusBounded, RectangularAndSingleFiniteRow) {
    std::mt19937_64 rng(6);
    IntMatrix a(5, 3, kInf);
    for (std::size_t k = 0; k < 3; ++k) a(2, k) = static_cast<Value>(k) - 1;
    IntMatrix b = oracle::random_matrix(rng, 3, 8, -2, 2);
    IntMatrix c = minplus_bounded(a, b, 2);
    EXPECT_EQ(c, oracle::minplus(a, b));
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 8; ++j) EXPECT_EQ(c(i, j) != kInf, i == 2);
}

TEST(MinplusBounded, RejectsOutOfRange) {
    IntMatrix a{{5}};
    EXPECT_THROW(minplus_bounded(a, a, 2), InputError);
}

TEST(BooleanReach, Patterns) {
    IntMatrix id = IntMatrix::tropical_identity(4);
    EXPECT_EQ(boolean_product_reach(id, id), id);
    IntMatrix z(3, 3, 0);
    EXPECT_EQ(boolean_product_reach(z, z), z);
    std::mt19937_64 rng(7);
    std::bernoulli_distribution coin(0.3);
    for (int rep = 0; rep < 10; ++rep) {
        IntMatrix a(12, 12), b(12, 12);
        for (auto& v : a.values()) v = coin(rng) ? 0 : kInf;
        for (auto& v : b.values()) v = coin(rng) ? 0 : kInf;
        EXPECT_EQ(boolean_product_reach(a, b), oracle::minplus(a, b));
    }
}

TEST(FiniteDifference, HandExample) {
    IntMatrix a{{0, 1}, {2, 4}};
    EXPECT_EQ(finite_difference(a), (IntMatrix{{4 - 2 - 1 + 0}}));
}

TEST(FiniteDifference, ConstantIsZero) {
    IntMatrix a(5, 6, 7);
    EXPECT_EQ(finite_difference(a), IntMatrix(4, 5, 0));
    EXPECT_EQ(max_abs_finite_difference(a, 2), 0);
}

TEST(FiniteDifference, InvertsPrefixSum) {
    std::mt19937_64 rng(8);
    IntMatrix a = oracle::random_matrix(rng, 6, 7, -9, 9);
    IntMatrix d = finite_difference(prefix_sum_2d(a));
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j) EXPECT_EQ(d(i, j), a(i + 1, j + 1));
}

TEST(MatrixIo, RoundTrip) {
    std::mt19937_64 rng(9);
    IntMatrix a = oracle::random_matrix(rng, 4, 5, -(Value{1} << 40), Value{1} << 40, 0.2);
    std::string text = format_matrix(a);
    EXPECT_EQ(parse_matrix(text), a);
    EXPECT_EQ(format_matrix(parse_matrix(text)), text);
}

TEST(MatrixIo, Errors) {
    try {
        parse_matrix(std::string("2 2\n1 2\n3 x\n"));
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW(parse_matrix(std::string("2 2\n1 2\n")), ParseError);
    EXPECT_THROW(parse_matrix(std::string("1 1\n1099511627777\n")), InputError);
    EXPECT_THROW(minplus_naive(IntMatrix(2, 3, 0), IntMatrix(2, 3, 0)), DimensionError);
}
