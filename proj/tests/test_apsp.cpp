#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "trop/apsp.hpp"

using namespace trop;

namespace {

GWCGraph make(std::size_t n, std::size_t t, std::size_t d, Value w, std::uint64_t seed) {
    GWCParams p;
    p.n = n;
    p.clusters = t;
    p.dim = d;
    p.error_bound = w;
    p.seed = seed;
    return generate_gwc(p);
}

Value scan_deviation(const GWCGraph& g) {
    Value worst = 0;
    const std::size_t t = g.clusters;
    for (std::size_t ci = 0; ci < t; ++ci)
        for (std::size_t cj = 0; cj < t; ++cj) {
            auto mi = g.members(ci), mj = g.members(cj);
            for (std::size_t a = 0; a < mi.size(); ++a)
                for (std::size_t b = 0; b < mj.size(); ++b) {
                    if (mi[a] == mj[b]) continue;
                    Value s = 0;
                    for (std::size_t r = 0; r < g.dim; ++r)
                        s += g.p[ci * t + cj][a * g.dim + r] * g.q[ci * t + cj][b * g.dim + r];
                    worst = std::max(worst, std::abs(g.weights(mi[a], mj[b]) - s));
                }
        }
    return worst;
}

}  // namespace

TEST(Gwc, GeneratorInvariant) {
    for (Value w : {0, 1, 3}) {
        GWCGraph g = make(32, 4, 2, w, 11 + static_cast<std::uint64_t>(w));
        EXPECT_NO_THROW(g.validate());
        EXPECT_LE(scan_deviation(g), w);
        EXPECT_EQ(scan_deviation(g), g.max_deviation());
        bool neg = false, pos = false;
        for (std::size_t u = 0; u < 32; ++u)
            for (std::size_t v = 0; v < 32; ++v)
                if (u != v) {
                    neg |= g.weights(u, v) < 0;
                    pos |= g.weights(u, v) > 0;
                }
        EXPECT_TRUE(neg && pos);
    }
    EXPECT_EQ(scan_deviation(make(16, 4, 2, 0, 5)), 0);
}

TEST(Gwc, OneDimensional) {
    GWCGraph g = make(16, 4, 1, 2, 3);
    for (const auto& q : g.q)
        for (Value v : q) EXPECT_EQ(v, 1);
    EXPECT_LE(scan_deviation(g), 2);
}

TEST(Gwc, ProductMatchesOracle) {
    std::mt19937_64 rng(1);
    for (Value w : {0, 2}) {
        GWCGraph g = make(64, 8, 2, w, 21);
        IntMatrix a = oracle::random_matrix(rng, 64, 64, -40, 40, 0.1);
        MinPlusConfig cfg;
        cfg.rho = 2;
        cfg.seed = 3;
        EXPECT_EQ(gwc_minplus(a, g, cfg), oracle::minplus(a, g.weights));
    }
    GWCGraph g = make(32, 4, 2, 2, 22);
    IntMatrix id = IntMatrix::tropical_identity(32);
    EXPECT_EQ(gwc_minplus(id, g), g.weights);
}

TEST(Apsp, FloydWarshallTriangle) {
    IntMatrix w{{0, 1, 3}, {kInf, 0, 1}, {kInf, kInf, 0}};
    IntMatrix d = apsp_floyd_warshall(w);
    EXPECT_EQ(d(0, 2), 2);
    IntMatrix id = IntMatrix::tropical_identity(4);
    EXPECT_EQ(apsp_floyd_warshall(id), id);
    std::mt19937_64 rng(2);
    IntMatrix r = oracle::random_matrix(rng, 12, 12, 0, 30, 0.4);
    EXPECT_EQ(apsp_floyd_warshall(r), oracle::distances(r));
}

TEST(Apsp, NegativeCycleWitness) {
    IntMatrix w{{0, 2, kInf}, {kInf, 0, -5}, {1, kInf, 0}};
    try {
        apsp_floyd_warshall(w);
        FAIL();
    } catch (const NegativeCycleError& e) {
        const auto& c = e.cycle();
        ASSERT_GE(c.size(), 2u);
        Value total = 0;
        for (std::size_t t = 0; t < c.size(); ++t) total += w(c[t], c[(t + 1) % c.size()]);
        EXPECT_LT(total, 0);
    }
}

TEST(Apsp, GwcMatchesOracle) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        GWCGraph g = make(64, 8, 2, 2, 40 + seed);
        ApspOptions opt;
        opt.ell = 4;
        opt.structured.rho = 2;
        opt.structured.seed = seed;
        ApspStats stats;
        EXPECT_EQ(apsp_gwc(g, opt, &stats), oracle::distances(g.weights));
        EXPECT_EQ(stats.ell, 4u);
    }
}

TEST(Apsp, LongThresholdAndSingleCluster) {
    GWCGraph g = make(24, 4, 2, 1, 50);
    ApspOptions opt;
    opt.ell = 24;
    EXPECT_EQ(apsp_gwc(g, opt), oracle::distances(g.weights));
    GWCGraph one = make(20, 1, 2, 2, 51);
    ApspOptions o2;
    o2.ell = 3;
    EXPECT_EQ(apsp_gwc(one, o2), oracle::distances(one.weights));
}

TEST(Apsp, SampledPassFindsLongPaths) {
    // A path graph whose shortest paths all run along the chain.
    const std::size_t n = 40, ell = 5;
    IntMatrix w(n, n, 1000);
    for (std::size_t v = 0; v < n; ++v) w(v, v) = 0;
    for (std::size_t v = 0; v + 1 < n; ++v) w(v, v + 1) = 1;
    IntMatrix exact = oracle::distances(w);
    int full = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        IntMatrix pass = sampled_sssp_pass(w, sample_vertices(n, ell, seed));
        bool ok = true;
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + ell; v < n; ++v) ok &= pass(u, v) == exact(u, v);
        full += ok ? 1 : 0;
    }
    EXPECT_GE(full, 38);
}

TEST(Apsp, SampleCount) {
    const std::size_t n = 128, ell = 8;
    auto s = sample_vertices(n, ell, 1);
    EXPECT_LE(s.size(), static_cast<std::size_t>(std::ceil(4.0 * 16 * std::log(128.0))));
    for (std::size_t v : s) EXPECT_LT(v, n);
}

TEST(Gwc, FileRoundTrip) {
    GWCGraph g = make(12, 3, 2, 1, 60);
    std::stringstream ss;
    write_gwc(ss, g);
    GWCGraph back = parse_gwc(ss);
    EXPECT_EQ(back.weights, g.weights);
    EXPECT_EQ(back.cluster_of, g.cluster_of);
    EXPECT_EQ(back.p, g.p);
    EXPECT_EQ(back.q, g.q);
    std::stringstream bad("4 3 2 1\n");
    EXPECT_THROW(parse_gwc(bad), InputError);
}
