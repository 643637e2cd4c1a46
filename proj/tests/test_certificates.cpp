#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "trop/certificate.hpp"

using namespace trop;

namespace {

Value scan_deviation(const IntMatrix& b, const BlockCertificate& cert) {
    Value worst = 0;
    for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            auto x = cert.x(k, j);
            auto y = cert.y(k, j);
            __int128 s = 0;
            for (std::size_t t = 0; t < cert.rank(); ++t) s += static_cast<__int128>(x[t]) * y[t];
            __int128 dev = s - b(k, j);
            if (dev < 0) dev = -dev;
            worst = std::max(worst, static_cast<Value>(dev));
        }
    return worst;
}

IntMatrix random_monotone(std::mt19937_64& rng, std::size_t rows, std::size_t cols, Value m) {
    // Column j+1 removes at most m in total from column j, spread over rows.
    IntMatrix b(rows, cols);
    std::uniform_int_distribution<Value> start(0, 40);
    for (std::size_t k = 0; k < rows; ++k) b(k, 0) = start(rng);
    std::uniform_int_distribution<std::size_t> row(0, rows - 1);
    std::uniform_int_distribution<Value> budget(0, m);
    for (std::size_t j = 1; j < cols; ++j) {
        for (std::size_t k = 0; k < rows; ++k) b(k, j) = b(k, j - 1);
        Value left = budget(rng);
        while (left-- > 0) b(row(rng), j) -= 1;
    }
    return b;
}

}  // namespace

TEST(Certificate, ExactRankOne) {
    IntMatrix b(6, 6);
    for (std::size_t k = 0; k < 6; ++k)
        for (std::size_t j = 0; j < 6; ++j) b(k, j) = static_cast<Value>(3 * k);
    BlockCertificate cert = cert_from_bounded_difference(b, 0, 3);
    auto check = verify_certificate(b, cert);
    EXPECT_TRUE(check.ok);
    EXPECT_EQ(check.max_deviation, 0);
    b(4, 4) += cert.error_bound() + 1;
    EXPECT_FALSE(verify_certificate(b, cert).ok);
}

TEST(Certificate, BoundedDifferenceStaircase) {
    IntMatrix b(5, 10);
    for (std::size_t k = 0; k < 5; ++k)
        for (std::size_t j = 0; j < 10; ++j) b(k, j) = static_cast<Value>(j);
    BlockCertificate cert = cert_from_bounded_difference(b, 1, 4);
    EXPECT_EQ(scan_deviation(b, cert), 3);
    EXPECT_EQ(cert.error_bound(), 3);
    EXPECT_TRUE(verify_certificate(b, cert).ok);
}

TEST(Certificate, BoundedDifferenceConstantAndRandom) {
    IntMatrix c(7, 9, -4);
    EXPECT_EQ(cert_from_bounded_difference(c, 5, 4).error_bound(), 0);
    std::mt19937_64 rng(1);
    for (int rep = 0; rep < 10; ++rep) {
        IntMatrix b = oracle::bounded_difference(rng, 30, 30, 3);
        BlockCertificate cert = cert_from_bounded_difference(b, 3, 8);
        EXPECT_TRUE(verify_certificate(b, cert).ok);
        EXPECT_EQ(scan_deviation(b, cert), cert.error_bound());
        EXPECT_LE(cert.error_bound(), 24);
    }
}

TEST(Certificate, FiniteDifferenceOrderOne) {
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 10; ++rep) {
        IntMatrix b = oracle::prefix_sums(oracle::random_matrix(rng, 21, 23, -1, 1));
        BlockCertificate cert = cert_from_finite_difference(b, 1, 4, Value{1});
        EXPECT_EQ(cert.rank(), 2u);
        EXPECT_TRUE(verify_certificate(b, cert).ok);
        EXPECT_LE(scan_deviation(b, cert), 9);
    }
}

TEST(Certificate, FiniteDifferenceBilinear) {
    IntMatrix b(9, 11);
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = 0; j < 11; ++j) b(i, j) = static_cast<Value>(i + j);
    BlockCertificate cert = cert_from_finite_difference(b, 1, 4);
    EXPECT_EQ(scan_deviation(b, cert), 0);
}

TEST(Certificate, FiniteDifferenceOrderTwo) {
    std::mt19937_64 rng(3);
    for (int rep = 0; rep < 5; ++rep) {
        IntMatrix b = oracle::prefix_sums(oracle::prefix_sums(oracle::random_matrix(rng, 20, 20, -1, 1)));
        BlockCertificate cert = cert_from_finite_difference(b, 2, 6);
        EXPECT_EQ(cert.rank(), 4u);
        EXPECT_TRUE(verify_certificate(b, cert).ok);
        EXPECT_EQ(scan_deviation(b, cert), cert.error_bound());
    }
}

TEST(Certificate, FiniteDifferenceRejectsLargeDerivative) {
    IntMatrix b{{0, 0}, {0, 5}};
    EXPECT_THROW(cert_from_finite_difference(b, 1, 2, Value{1}), InputError);
}

TEST(Certificate, MonotoneConstantRows) {
    IntMatrix b(6, 8);
    for (std::size_t k = 0; k < 6; ++k)
        for (std::size_t j = 0; j < 8; ++j) b(k, j) = static_cast<Value>(10 * k);
    auto mc = cert_from_monotone(b, 0, 4, 2);
    EXPECT_TRUE(mc.corrections.empty());
    EXPECT_EQ(mc.cert.error_bound(), 0);
    EXPECT_EQ(mc.clamped, b);
}

TEST(Certificate, MonotoneStaircase) {
    // Row 2 drops by gamma inside the first column block only.
    const Value gamma = 3;
    IntMatrix b(4, 8, 5);
    for (std::size_t j = 2; j < 8; ++j) b(2, j) = 5 - gamma;
    auto mc = cert_from_monotone(b, gamma, 4, gamma);
    ASSERT_EQ(mc.corrections.size(), 1u);
    EXPECT_EQ(mc.corrections[0].row, 2u);
    EXPECT_EQ(mc.corrections[0].col_begin, 0u);
    EXPECT_EQ(mc.corrections[0].col_end, 4u);
    EXPECT_EQ(mc.sentinel, 6);
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(mc.clamped(2, j), 6);
}

TEST(Certificate, MonotoneRandom) {
    std::mt19937_64 rng(4);
    for (int rep = 0; rep < 10; ++rep) {
        IntMatrix b = random_monotone(rng, 30, 40, 6);
        auto mc = cert_from_monotone(b, 6, 5, 2);
        EXPECT_TRUE(verify_certificate(mc.clamped, mc.cert).ok);
        EXPECT_LE(mc.cert.error_bound(), 2);
        std::vector<char> marked(b.rows() * b.cols(), 0);
        for (const auto& c : mc.corrections)
            for (std::size_t j = c.col_begin; j < c.col_end; ++j) marked[c.row * b.cols() + j] = 1;
        for (std::size_t k = 0; k < b.rows(); ++k)
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (marked[k * b.cols() + j])
                    EXPECT_EQ(mc.clamped(k, j), mc.sentinel);
                else
                    EXPECT_EQ(mc.clamped(k, j), b(k, j));
            }
    }
}

TEST(Certificate, MonotoneRejectsIncreasingRow) {
    IntMatrix b{{1, 2}};
    EXPECT_THROW(require_monotone_rows(b, 5), InputError);
    EXPECT_THROW(cert_from_monotone(b, 5, 1, 1), InputError);
}
