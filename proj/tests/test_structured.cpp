#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "trop/certificate.hpp"
#include "trop/structured.hpp"

using namespace trop;

namespace {

struct Case {
    IntMatrix a, b;
    BlockCertificate cert;
};

Case bounded_case(std::uint64_t seed, std::size_t n, Value q, std::size_t block, double inf_prob = 0.05) {
    std::mt19937_64 rng(seed);
    Case c;
    c.a = oracle::random_matrix(rng, n, n, -30, 30, inf_prob);
    c.b = oracle::bounded_difference(rng, n, n, q);
    c.cert = cert_from_bounded_difference(c.b, q, block);
    return c;
}

Value max_gap(const IntMatrix& x, const IntMatrix& y) {
    Value worst = 0;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) {
            if ((x(i, j) == kInf) != (y(i, j) == kInf)) return kInf;
            if (x(i, j) != kInf) worst = std::max(worst, std::abs(x(i, j) - y(i, j)));
        }
    return worst;
}

}  // namespace

TEST(Phase1, ExactForZeroErrorCertificate) {
    std::mt19937_64 rng(1);
    IntMatrix a = oracle::random_matrix(rng, 20, 24, -9, 9, 0.1);
    IntMatrix b(24, 18);
    std::uniform_int_distribution<Value> v(-20, 20);
    std::vector<Value> r(24), c(18);
    for (auto& x : r) x = v(rng);
    for (auto& x : c) x = v(rng);
    for (std::size_t k = 0; k < 24; ++k)
        for (std::size_t j = 0; j < 18; ++j) b(k, j) = r[k] + c[j];
    BlockCertificate cert = cert_from_finite_difference(b, 1, 5);
    ASSERT_EQ(cert.error_bound(), 0);
    EXPECT_EQ(phase1_approx(a, b, cert), oracle::minplus(a, b));
    MinPlusConfig search;
    search.phase1_binary_search = true;
    EXPECT_EQ(phase1_approx(a, b, cert, search), oracle::minplus(a, b));
}

TEST(Phase1, ErrorWithinBoundOnBddInstances) {
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 10; ++rep) {
        IntMatrix a = oracle::random_matrix(rng, 32, 32, -40, 40, 0.1);
        IntMatrix b = oracle::bdd_matrix(rng, 32, 32, 2);
        BlockCertificate cert = cert_from_finite_difference(b, 1, 8);
        IntMatrix ct = phase1_approx(a, b, cert);
        EXPECT_LE(max_gap(ct, oracle::minplus(a, b)), cert.error_bound());
    }
}

TEST(Phase1, AllInfRows) {
    Case c = bounded_case(3, 16, 2, 4);
    IntMatrix a(16, 16, kInf);
    IntMatrix ct = phase1_approx(a, c.b, c.cert);
    for (Value v : ct.values()) EXPECT_EQ(v, kInf);
}

TEST(Phase2, CandidateSumsAboveTruth) {
    Case c = bounded_case(4, 32, 3, 8);
    IntMatrix exact = oracle::minplus(c.a, c.b);
    IntMatrix ct = phase1_approx(c.a, c.b, c.cert);
    MinPlusConfig cfg;
    cfg.rho = 2;
    cfg.rounds = 6;
    cfg.seed = 9;
    auto p2 = phase2_sample(c.a, c.b, ct, c.cert.error_bound(), cfg);
    for (std::size_t i = 0; i < 32; ++i)
        for (std::size_t j = 0; j < 32; ++j) {
            EXPECT_GE(p2.c_hat(i, j), exact(i, j));
            if (p2.c_hat(i, j) == kInf) continue;
            bool witness = false;
            for (std::size_t k = 0; k < 32; ++k)
                witness |= c.a(i, k) != kInf && c.a(i, k) + c.b(k, j) == p2.c_hat(i, j);
            EXPECT_TRUE(witness);
        }
    EXPECT_EQ(p2.report.sampled_columns.size(), 6u);
}

TEST(Phase2, SelfColumnExactWhenErrorIsZero) {
    std::mt19937_64 rng(5);
    IntMatrix a = oracle::random_matrix(rng, 16, 16, -9, 9, 0.1);
    IntMatrix b(16, 16);
    for (std::size_t k = 0; k < 16; ++k)
        for (std::size_t j = 0; j < 16; ++j) b(k, j) = static_cast<Value>(2 * k) - static_cast<Value>(j);
    BlockCertificate cert = cert_from_finite_difference(b, 1, 4);
    ASSERT_EQ(cert.error_bound(), 0);
    IntMatrix ct = phase1_approx(a, b, cert);
    IntMatrix exact = oracle::minplus(a, b);
    for (std::size_t j1 : {0u, 7u, 15u}) {
        auto p2 = phase2_sample(a, b, ct, 0, MinPlusConfig{}, std::vector<std::size_t>{j1});
        for (std::size_t i = 0; i < 16; ++i) EXPECT_EQ(p2.c_hat(i, j1), exact(i, j1));
    }
}

TEST(Phase2, WeaklyRelevantUncoveredIsSmall) {
    const std::size_t n = 64, rho = 4;
    int within = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Case c = bounded_case(100 + seed, n, 3, 8, 0.0);
        IntMatrix ct = phase1_approx(c.a, c.b, c.cert);
        MinPlusConfig cfg;
        cfg.rho = rho;
        cfg.seed = seed;
        cfg.bucket_size = 8;
        auto p2 = phase2_sample(c.a, c.b, ct, c.cert.error_bound(), cfg);
        // Independent count straight from the definition.
        std::size_t count = 0;
        const Value w = c.cert.error_bound();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                if (p2.report.is_covered(i, k)) continue;
                for (std::size_t j = 0; j < n; ++j)
                    if (std::abs(c.a(i, k) + c.b(k, j) - ct(i, j)) <= 3 * w) ++count;
            }
        EXPECT_EQ(count, count_weakly_relevant_uncovered(c.a, c.b, ct, w, p2.report));
        if (count <= n * n * n / rho) ++within;
    }
    EXPECT_GE(within, 38);
}

TEST(Phase3, ZeroRoundsStillExact) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Case c = bounded_case(200 + seed, 40, 3, 8);
        MinPlusConfig cfg;
        cfg.rounds = 0;
        StructuredStats stats;
        EXPECT_EQ(minplus_structured(c.a, c.b, c.cert, cfg, &stats), oracle::minplus(c.a, c.b));
        EXPECT_EQ(stats.rounds, 0u);
        EXPECT_EQ(stats.covered_pairs, 0u);
    }
}

TEST(Phase3, NoChangeWhenEverythingCovered) {
    Case c = bounded_case(7, 24, 2, 6, 0.0);
    IntMatrix exact = oracle::minplus(c.a, c.b);
    IntMatrix ct = phase1_approx(c.a, c.b, c.cert);
    RelevanceReport report;
    report.rows = 24;
    report.inner = 24;
    report.covered.assign(24 * 24, 1);
    std::size_t listed = 0;
    EXPECT_EQ(phase3_correct(c.a, c.b, ct, exact, report, c.cert, {}, &listed), exact);
    EXPECT_EQ(listed, 0u);
}

TEST(Structured, RandomizedMatchesOracle) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Case c = bounded_case(300 + seed, 64, 3, 8);
        MinPlusConfig cfg;
        cfg.rho = 4;
        cfg.seed = seed;
        cfg.bucket_size = 8;
        ASSERT_EQ(minplus_structured(c.a, c.b, c.cert, cfg), oracle::minplus(c.a, c.b));
    }
}

TEST(Structured, RectangularAndShortBlocks) {
    std::mt19937_64 rng(8);
    IntMatrix a = oracle::random_matrix(rng, 13, 29, -15, 15, 0.1);
    IntMatrix b = oracle::bounded_difference(rng, 29, 17, 2);
    BlockCertificate cert = cert_from_bounded_difference(b, 2, 7);
    MinPlusConfig cfg;
    cfg.rho = 3;
    cfg.seed = 5;
    EXPECT_EQ(minplus_structured(a, b, cert, cfg), oracle::minplus(a, b));
    cfg.deterministic = true;
    cfg.cap_multiplier = 5;
    EXPECT_EQ(minplus_structured(a, b, cert, cfg), oracle::minplus(a, b));
}

TEST(Structured, DeterministicMatchesOracleAndRepeats) {
    Case c = bounded_case(400, 48, 3, 8);
    MinPlusConfig cfg;
    cfg.rho = 4;
    cfg.deterministic = true;
    cfg.cap_multiplier = 5;
    cfg.bucket_size = 8;
    StructuredStats s1, s2;
    IntMatrix r1 = minplus_structured(c.a, c.b, c.cert, cfg, &s1);
    cfg.threads = 3;
    IntMatrix r2 = minplus_structured(c.a, c.b, c.cert, cfg, &s2);
    EXPECT_EQ(r1, oracle::minplus(c.a, c.b));
    EXPECT_EQ(r1, r2);
    EXPECT_EQ(s1.sampled_columns, s2.sampled_columns);
    EXPECT_EQ(s1.triples_listed, s2.triples_listed);
}

TEST(Structured, SeededRunsRepeatAcrossThreads) {
    Case c = bounded_case(401, 40, 3, 8);
    MinPlusConfig cfg;
    cfg.rho = 2;
    cfg.seed = 77;
    StructuredStats s1, s2;
    IntMatrix r1 = minplus_structured(c.a, c.b, c.cert, cfg, &s1);
    cfg.threads = 4;
    IntMatrix r2 = minplus_structured(c.a, c.b, c.cert, cfg, &s2);
    EXPECT_EQ(r1, r2);
    EXPECT_EQ(s1.sampled_columns, s2.sampled_columns);
    EXPECT_EQ(s1.covered_pairs, s2.covered_pairs);
}

TEST(Derandomize, ExhaustiveRho) {
    Case c = bounded_case(500, 24, 2, 6, 0.0);
    IntMatrix ct = phase1_approx(c.a, c.b, c.cert);
    ColumnSelection sel = derandomize_select(c.a, c.b, ct, c.cert, 24);
    EXPECT_EQ(sel.set_size, 1u);
    MinPlusConfig cfg;
    cfg.cap_multiplier = 5;
    auto p2 = phase2_sample(c.a, c.b, ct, c.cert.error_bound(), cfg, sel.columns);
    for (const auto& s : sel.sets)
        for (std::size_t j : s) EXPECT_NE(std::find(sel.columns.begin(), sel.columns.end(), j), sel.columns.end());
}

TEST(Derandomize, HitsEveryListedSetWithZeroError) {
    std::mt19937_64 rng(9);
    IntMatrix a = oracle::random_matrix(rng, 30, 30, -3, 3);
    IntMatrix b(30, 30);
    for (std::size_t k = 0; k < 30; ++k)
        for (std::size_t j = 0; j < 30; ++j) b(k, j) = static_cast<Value>(k % 3) + static_cast<Value>(j % 2);
    BlockCertificate cert = cert_from_finite_difference(b, 1, 6);
    ASSERT_EQ(cert.error_bound(), 0);
    IntMatrix ct = phase1_approx(a, b, cert);
    ColumnSelection sel = derandomize_select(a, b, ct, cert, 3);
    EXPECT_EQ(sel.set_size, 10u);
    EXPECT_FALSE(sel.sets.empty());
    for (const auto& s : sel.sets) {
        EXPECT_EQ(s.size(), sel.set_size);
        bool hit = false;
        for (std::size_t j : s) hit |= std::find(sel.columns.begin(), sel.columns.end(), j) != sel.columns.end();
        EXPECT_TRUE(hit);
    }
    // With W = 0 the listed columns are exactly those with A[i,k] + B[k,j] == C~[i,j].
    std::size_t full_pairs = 0;
    for (std::size_t i = 0; i < 30; ++i)
        for (std::size_t k = 0; k < 30; ++k) {
            std::size_t hits = 0;
            for (std::size_t j = 0; j < 30; ++j) hits += a(i, k) + b(k, j) == ct(i, j) ? 1 : 0;
            if (hits >= sel.set_size) ++full_pairs;
        }
    EXPECT_EQ(full_pairs, sel.sets.size());
}

TEST(Relevance, WeakTriplesAreApproximatelyRelevant) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Case c = bounded_case(600 + seed, 32, 3, 8);
        IntMatrix ct = phase1_approx(c.a, c.b, c.cert);
        EXPECT_EQ(count_weak_not_approx(c.a, c.b, ct, c.cert), 0u);
    }
}

TEST(Structured, ConfigValidation) {
    Case c = bounded_case(700, 8, 1, 4);
    MinPlusConfig cfg;
    cfg.cap_multiplier = 4;
    EXPECT_THROW(minplus_structured(c.a, c.b, c.cert, cfg), InputError);
    cfg.cap_multiplier = 3;
    cfg.rho = 0;
    EXPECT_THROW(minplus_structured(c.a, c.b, c.cert, cfg), InputError);
    IntMatrix binf = c.b;
    binf(0, 0) = kInf;
    EXPECT_THROW(minplus_structured(c.a, binf, c.cert, {}), InputError);
}
