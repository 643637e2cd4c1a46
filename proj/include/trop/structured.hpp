#pragma once

// Exact min-plus product A * B for arbitrary A and a matrix B that comes
// with a per-block low-rank certificate of error W.
//
//   phase 1  C~ with |C~ - C| <= W, from halfspace minimization over the
//            points (A[i,k], X(k)) and directions (1, Y(j)).
//   phase 2  sampled columns j^r; A^r = A + B[:,j^r] - C~[:,j^r] capped at
//            cap*W, B^r = B - B[:,j^r], products by the bucketed algorithm.
//   phase 3  remaining uncovered candidates listed by halfspace reporting.
//
// Sampling only changes how much work phase 3 does; the result is always
// exact.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "trop/certificate.hpp"
#include "trop/matrix.hpp"

namespace trop {

struct MinPlusConfig {
    std::optional<std::size_t> rho;
    std::optional<std::size_t> rounds;  // default ceil(10 rho ln n)
    Value cap_multiplier = 3;           // 5 when deterministic
    std::uint64_t seed = 0;
    bool deterministic = false;
    bool phase1_binary_search = false;
    std::optional<std::size_t> bucket_size;
    std::size_t threads = 1;
    double omega_eff = 3.0;
    bool collect_relevance = false;

    void validate() const;
};

struct RelevanceReport {
    std::size_t rows = 0, inner = 0;
    std::vector<char> covered;  // rows x inner
    std::size_t weakly_relevant_uncovered_count = 0;
    std::vector<std::size_t> sampled_columns;

    bool is_covered(std::size_t i, std::size_t k) const { return covered[i * inner + k] != 0; }
};

struct StructuredStats {
    std::size_t rho = 0;
    std::size_t rounds = 0;
    std::size_t covered_pairs = 0;
    std::size_t finite_pairs = 0;
    std::size_t triples_listed = 0;
    std::size_t hitting_set_size = 0;
    std::size_t large_buckets_scanned = 0;
    std::size_t weakly_relevant_uncovered = 0;
    double phase1_ms = 0, select_ms = 0, phase2_ms = 0, phase3_ms = 0;
    std::vector<std::size_t> sampled_columns;
};

struct Phase2Result {
    IntMatrix c_hat;
    RelevanceReport report;
    std::size_t large_buckets_scanned = 0;
};

struct ColumnSelection {
    std::vector<std::size_t> columns;
    // The listed S(i,k) sets (each of size `set_size`) the columns must hit.
    std::vector<std::vector<std::size_t>> sets;
    std::size_t set_size = 0;
};

// C~[i,j] = min over k-blocks of min_{k in block} A[i,k] + X(k).Y(j).
IntMatrix phase1_approx(const IntMatrix& a, const IntMatrix& b, const BlockCertificate& cert,
                        const MinPlusConfig& config = {});

// With `columns` the sampled j^r are taken from it instead of the generator.
Phase2Result phase2_sample(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c_tilde, Value error_bound,
                           const MinPlusConfig& config,
                           const std::optional<std::vector<std::size_t>>& columns = std::nullopt);

IntMatrix phase3_correct(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c_tilde, const IntMatrix& c_hat,
                         const RelevanceReport& report, const BlockCertificate& cert, const MinPlusConfig& config = {},
                         std::size_t* triples_listed = nullptr);

// Deterministic choice of j^r: lists up to ceil(p/rho) approximately
// relevant columns per (i,k) and greedily hits every full list.
ColumnSelection derandomize_select(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c_tilde,
                                   const BlockCertificate& cert, std::size_t rho);

IntMatrix minplus_structured(const IntMatrix& a, const IntMatrix& b, const BlockCertificate& cert,
                             const MinPlusConfig& config = {}, StructuredStats* stats = nullptr);

// Triples (i,k,j) with finite A[i,k], |A[i,k] + B[k,j] - C~[i,j]| <= 3W and
// (i,k) not covered.
std::size_t count_weakly_relevant_uncovered(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c_tilde,
                                            Value error_bound, const RelevanceReport& report);

// Triples with |A[i,k] + B[k,j] - C~[i,j]| <= 3W that are not within 4W
// under the certificate surrogate. Zero whenever the certificate is valid.
std::size_t count_weak_not_approx(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c_tilde,
                                  const BlockCertificate& cert);

namespace detail {
// Inputs already validated; used by callers that supply their own factors.
IntMatrix minplus_structured_unchecked(const IntMatrix& a, const IntMatrix& b, const BlockCertificate& cert,
                                       const MinPlusConfig& config, StructuredStats* stats);
}  // namespace detail

}  // namespace trop
