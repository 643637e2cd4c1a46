#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "trop/range_mode.hpp"

using namespace trop;

namespace {

RangeModeInstance random_instance(std::mt19937_64& rng, std::size_t n, std::size_t q, Value alphabet) {
    RangeModeInstance inst;
    std::uniform_int_distribution<Value> v(0, alphabet - 1);
    std::uniform_int_distribution<std::size_t> pos(1, n);
    for (std::size_t i = 0; i < n; ++i) inst.seq.push_back(v(rng) * 1000 - 7);
    for (std::size_t t = 0; t < q; ++t) {
        std::size_t l = pos(rng), r = pos(rng);
        if (l > r) std::swap(l, r);
        inst.queries.push_back({l, r});
    }
    return inst;
}

std::vector<std::size_t> expected(const RangeModeInstance& inst) {
    std::vector<std::pair<std::size_t, std::size_t>> q;
    for (auto [l, r] : inst.queries) q.emplace_back(l, r);
    return oracle::range_mode(inst.seq, q);
}

}  // namespace

TEST(RangeModeNaive, Examples) {
    RangeModeInstance inst{{1, 2, 1, 2, 2}, {{1, 5}, {3, 3}, {1, 3}}};
    auto got = range_mode_naive(inst);
    EXPECT_EQ(got, expected(inst));
    EXPECT_EQ(got[0], 3u);
    EXPECT_EQ(got[1], 1u);
    RangeModeInstance same{std::vector<Value>(9, 4), {{2, 7}, {1, 9}}};
    EXPECT_EQ(range_mode_naive(same), (std::vector<std::size_t>{6, 9}));
}

TEST(RangeModeBatch, SingleLetterAlphabet) {
    std::mt19937_64 rng(1);
    auto inst = random_instance(rng, 300, 200, 1);
    auto got = batch_range_mode(inst);
    for (std::size_t t = 0; t < inst.queries.size(); ++t)
        EXPECT_EQ(got[t], inst.queries[t].r - inst.queries[t].l + 1);
}

TEST(RangeModeBatch, ThresholdsAndAlphabets) {
    std::mt19937_64 rng(2);
    for (Value alphabet : {2, 9, 50}) {
        auto inst = random_instance(rng, 400, 400, alphabet);
        auto want = expected(inst);
        for (std::size_t t : {std::size_t{1}, std::size_t{3}, std::size_t{0}, std::size_t{400}}) {
            RangeModeOptions opt;
            if (t) opt.threshold = t;
            opt.monotone.block_size = 4;
            RangeModeStats stats;
            ASSERT_EQ(batch_range_mode(inst, opt, &stats), want) << "alphabet " << alphabet << " T " << t;
        }
    }
}

TEST(RangeModeBatch, DefaultOnMidSizedInstance) {
    std::mt19937_64 rng(3);
    auto inst = random_instance(rng, 2000, 2000, 50);
    EXPECT_EQ(batch_range_mode(inst), expected(inst));
}

TEST(MinplusMonotone, ConstantAndRandom) {
    std::mt19937_64 rng(4);
    IntMatrix a = oracle::random_matrix(rng, 10, 12, -5, 5, 0.2);
    IntMatrix b(12, 9, -3);
    EXPECT_EQ(minplus_monotone(a, b, 0), oracle::minplus(a, b));

    for (int rep = 0; rep < 5; ++rep) {
        const std::size_t n = 48;
        const Value m = 8;
        IntMatrix bb(n, n);
        std::uniform_int_distribution<Value> start(-10, 30);
        std::uniform_int_distribution<std::size_t> row(0, n - 1);
        std::uniform_int_distribution<Value> budget(0, m);
        for (std::size_t k = 0; k < n; ++k) bb(k, 0) = start(rng);
        for (std::size_t j = 1; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) bb(k, j) = bb(k, j - 1);
            for (Value left = budget(rng); left > 0; --left) bb(row(rng), j) -= 1;
        }
        IntMatrix aa = oracle::random_matrix(rng, n, n, -20, 20, 0.1);
        MonotoneOptions opt;
        opt.block_size = 6;
        opt.gamma = 2;
        opt.structured.rho = 2;
        opt.structured.seed = static_cast<std::uint64_t>(rep);
        MonotoneStats stats;
        EXPECT_EQ(minplus_monotone(aa, bb, m, opt, &stats), oracle::minplus(aa, bb));
        EXPECT_GT(stats.corrections, 0u);

        MonotoneOptions loose = opt;
        loose.gamma = Value{1} << 30;
        MonotoneStats loose_stats;
        EXPECT_EQ(minplus_monotone(aa, bb, m, loose, &loose_stats), oracle::minplus(aa, bb));
        EXPECT_EQ(loose_stats.corrections, 0u);
    }
}

TEST(MinplusMonotone, RejectsViolations) {
    IntMatrix a{{0, 0}};
    IntMatrix up{{0, 1}, {0, 0}};
    EXPECT_THROW(minplus_monotone(a, up, 5), InputError);
    IntMatrix steep{{9, 0}, {9, 0}};
    EXPECT_THROW(minplus_monotone(a, steep, 5), InputError);
}

TEST(RangeModeIo, RoundTripAndErrors) {
    std::mt19937_64 rng(5);
    auto inst = random_instance(rng, 20, 7, 4);
    std::stringstream ss;
    write_range_mode(ss, inst);
    auto back = parse_range_mode(ss);
    EXPECT_EQ(back.seq, inst.seq);
    ASSERT_EQ(back.queries.size(), inst.queries.size());
    for (std::size_t t = 0; t < inst.queries.size(); ++t) {
        EXPECT_EQ(back.queries[t].l, inst.queries[t].l);
        EXPECT_EQ(back.queries[t].r, inst.queries[t].r);
    }
    std::stringstream bad("3 1\n1 2 3\n2 5\n");
    EXPECT_THROW(parse_range_mode(bad), InputError);
    std::stringstream reversed("3 1\n1 2 3\n3 2\n");
    EXPECT_THROW(parse_range_mode(reversed), InputError);
}
