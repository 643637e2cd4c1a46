#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "trop/maxsubarray.hpp"

using namespace trop;

namespace {

Value brute_1d(const std::vector<Value>& s) {
    Value best = s[0];
    for (std::size_t i = 0; i < s.size(); ++i) {
        Value run = 0;
        for (std::size_t j = i; j < s.size(); ++j) {
            run += s[j];
            best = std::max(best, run);
        }
    }
    return best;
}

CentralArray random_central(std::mt19937_64& rng, std::size_t d, std::size_t n, Value m) {
    CentralArray c(d, n);
    std::uniform_int_distribution<Value> v(-m, m);
    for (auto& x : c.data()) x = v(rng);
    return c;
}

// Direct loop over both corners of every 2D central box.
Value central_loop_2d(const CentralArray& c) {
    const long n = static_cast<long>(c.n());
    Value best = kNegInf;
    for (long x1 = -n; x1 < 0; ++x1)
        for (long x2 = 1; x2 <= n; ++x2)
            for (long y1 = -n; y1 < 0; ++y1)
                for (long y2 = 1; y2 <= n; ++y2)
                    best = std::max(best, c.at2(x1, y1) + c.at2(x1, y2) + c.at2(x2, y1) + c.at2(x2, y2));
    return best;
}

}  // namespace

TEST(Kadane, Examples) {
    std::vector<Value> s{-2, 1, -3, 4, -1, 2, 1, -5, 4};
    auto r = kadane_1d(s);
    EXPECT_EQ(r.best_sum, brute_1d(s));
    EXPECT_EQ(r.best_sum, 6);
    EXPECT_EQ(r.box[0], (std::pair<std::size_t, std::size_t>{3, 6}));
    std::vector<Value> neg{-3, -1, -2};
    EXPECT_EQ(kadane_1d(neg).best_sum, brute_1d(neg));
    EXPECT_EQ(kadane_1d(neg).best_sum, -1);
    std::vector<Value> one{5};
    EXPECT_EQ(kadane_1d(one).best_sum, 5);
    EXPECT_THROW(kadane_1d(std::vector<Value>{}), InputError);
}

TEST(MaxSubarray, TwoDimensional) {
    IntMatrix a{{1, -2}, {-3, 4}};
    EXPECT_EQ(max_subarray_2d(a).best_sum, oracle::max_subarray(a));
    EXPECT_EQ(max_subarray_2d(a).best_sum, 4);
    IntMatrix ones(5, 5, 1);
    EXPECT_EQ(max_subarray_2d(ones).best_sum, 25);
    std::mt19937_64 rng(1);
    for (int rep = 0; rep < 20; ++rep) {
        IntMatrix m = oracle::random_matrix(rng, 7, 9, -5, 5);
        auto r = max_subarray_2d(m);
        EXPECT_EQ(r.best_sum, oracle::max_subarray(m));
        EXPECT_EQ(box_sum(Tensor::from_matrix(m), r.box), r.best_sum);
    }
}

TEST(MaxSubarray, ThreeDimensionalBrute) {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<Value> v(-5, 5);
    Tensor t({6, 6, 6});
    for (auto& x : t.data()) x = v(rng);
    Value best = kNegInf;
    for (std::size_t a0 = 0; a0 < 6; ++a0)
        for (std::size_t a1 = a0; a1 < 6; ++a1)
            for (std::size_t b0 = 0; b0 < 6; ++b0)
                for (std::size_t b1 = b0; b1 < 6; ++b1)
                    for (std::size_t c0 = 0; c0 < 6; ++c0)
                        for (std::size_t c1 = c0; c1 < 6; ++c1) {
                            Value s = 0;
                            for (std::size_t x = a0; x <= a1; ++x)
                                for (std::size_t y = b0; y <= b1; ++y)
                                    for (std::size_t z = c0; z <= c1; ++z) s += t.at({x, y, z});
                            best = std::max(best, s);
                        }
    auto r = max_subarray_dd(t);
    EXPECT_EQ(r.best_sum, best);
    EXPECT_EQ(box_sum(t, r.box), best);
}

TEST(MinplusBdd, OrderOne) {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 3; ++rep) {
        IntMatrix a = oracle::random_matrix(rng, 48, 48, -20, 20, 0.05);
        IntMatrix b = oracle::bdd_matrix(rng, 48, 48, 2);
        BddOptions opt;
        opt.block_size = 8;
        opt.structured.rho = 3;
        opt.structured.seed = static_cast<std::uint64_t>(rep);
        EXPECT_EQ(minplus_bdd(a, b, 1, 2, opt), oracle::minplus(a, b));
    }
}

TEST(MinplusBdd, ConstantB) {
    std::mt19937_64 rng(4);
    IntMatrix a = oracle::random_matrix(rng, 12, 12, -9, 9, 0.2);
    IntMatrix b(12, 12, 17);
    IntMatrix c = minplus_bdd(a, b, 1, 1);
    for (std::size_t i = 0; i < 12; ++i) {
        Value m = kInf;
        for (std::size_t k = 0; k < 12; ++k) m = std::min(m, a(i, k));
        for (std::size_t j = 0; j < 12; ++j) EXPECT_EQ(c(i, j), m == kInf ? kInf : m + 17);
    }
}

TEST(MinplusBdd, OrderTwo) {
    std::mt19937_64 rng(5);
    IntMatrix a = oracle::random_matrix(rng, 32, 32, -20, 20, 0.05);
    IntMatrix b = oracle::prefix_sums(oracle::bdd_matrix(rng, 32, 32, 1));
    Value bound = 1;
    BddOptions opt;
    opt.block_size = 6;
    opt.structured.rho = 2;
    EXPECT_EQ(minplus_bdd(a, b, 2, bound, opt), oracle::minplus(a, b));
    EXPECT_THROW(minplus_bdd(a, b, 1, 1, opt), InputError);
}

TEST(MaxSubarrayFast, SmallBoundedMatrices) {
    std::mt19937_64 rng(6);
    for (int rep = 0; rep < 20; ++rep) {
        IntMatrix a = oracle::random_matrix(rng, 20, 20, -3, 3);
        FastSubarrayOptions opt;
        opt.validate = true;
        opt.bdd.block_size = 5;
        opt.bdd.structured.rho = 2;
        opt.bdd.structured.seed = static_cast<std::uint64_t>(rep);
        FastSubarrayStats stats;
        EXPECT_EQ(max_subarray_2d_fast(a, 3, opt, &stats), oracle::max_subarray(a));
        EXPECT_GT(stats.levels_checked, 0u);
        EXPECT_LE(stats.max_operand_difference, 3);
    }
}

TEST(MaxSubarrayFast, IsolatedPositiveEntry) {
    IntMatrix a(9, 11, -2);
    a(4, 7) = 2;
    EXPECT_EQ(max_subarray_2d_fast(a, 2), 2);
    IntMatrix neg(3, 4, -2);
    EXPECT_EQ(max_subarray_2d_fast(neg, 2), -2);
    IntMatrix col(6, 1, 1);
    col(2, 0) = -1;
    EXPECT_EQ(max_subarray_2d_fast(col, 1), oracle::max_subarray(col));
}

TEST(MaxSubarrayFast, RejectsUnboundedEntries) {
    IntMatrix a{{4, 0}, {0, 0}};
    EXPECT_THROW(max_subarray_2d_fast(a, 3), InputError);
}

TEST(Central, OneDimensionalSeparable) {
    CentralArray c(1, 4);
    std::vector<Value> vals{3, -1, 7, 2, 9, -4, 5, 8, 1};
    c.data() = vals;
    Value neg = *std::max_element(vals.begin(), vals.begin() + 4);
    Value pos = *std::max_element(vals.begin() + 5, vals.end());
    EXPECT_EQ(central_max_subarray_naive(c).best, neg + pos);
}

TEST(Central, AllOnesAndZero) {
    CentralArray ones(2, 3, 1);
    EXPECT_EQ(central_max_subarray_naive(ones).best, 4);
    CentralArray zero(2, 5, 0);
    EXPECT_EQ(central_max_subarray_2d_fast(zero, 1), 0);
}

TEST(Central, NaiveMatchesLoop) {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 10; ++rep) {
        CentralArray c = random_central(rng, 2, 4, 9);
        auto r = central_max_subarray_naive(c);
        EXPECT_EQ(r.best, central_loop_2d(c));
        std::vector<long> lo(2), hi(2);
        Value s = 0;
        for (unsigned mask = 0; mask < 4; ++mask) {
            std::vector<long> idx(2);
            for (int t = 0; t < 2; ++t) idx[t] = r.i[t] - ((mask >> t) & 1 ? r.delta[t] : 0);
            s += c.at(idx);
        }
        EXPECT_EQ(s, r.best);
    }
}

TEST(Central, FastMatchesNaive) {
    std::mt19937_64 rng(8);
    for (int rep = 0; rep < 10; ++rep) {
        CentralArray c = random_central(rng, 2, 16, 2);
        EXPECT_EQ(central_max_subarray_2d_fast(c, 2), central_loop_2d(c));
    }
}

TEST(Central, BoostedQuadruple) {
    std::mt19937_64 rng(9);
    CentralArray c = random_central(rng, 2, 6, 1);
    for (long x : {-4L, 2L})
        for (long y : {-1L, 5L}) c.at2(x, y) = 50;
    EXPECT_EQ(central_max_subarray_2d_fast(c, 50), 200);
    EXPECT_EQ(central_max_subarray_naive(c).best, 200);
}

TEST(Central, FileRoundTrip) {
    std::mt19937_64 rng(10);
    CentralArray c = random_central(rng, 3, 2, 7);
    std::stringstream ss;
    write_central(ss, c);
    EXPECT_EQ(parse_central(ss), c);
    std::stringstream bad("2 1\n1 2 3\n4 5\n");
    EXPECT_THROW(parse_central(bad), ParseError);
}
