#pragma once

#include <cstddef>
#include <optional>

#include "trop/matrix.hpp"

namespace trop {

struct BucketedOptions {
    // Bucket width; defaults to sqrt(M) * n^((omega_eff-1)/2), clamped to [1, n].
    std::optional<std::size_t> bucket_size;
    double omega_eff = 3.0;
    // Instrumented mode: after computing the product, checks that every
    // (i,j) has a minimizing k inside a small bucket or inside one of the
    // first two large buckets that contain a finite A[i,k]. Throws
    // std::logic_error on violation.
    bool check_dominance = false;
};

struct BucketedStats {
    std::size_t bucket_size = 0;
    std::size_t small_buckets = 0;
    std::size_t large_buckets = 0;
    std::size_t bounded_products = 0;
    std::size_t large_buckets_scanned = 0;
    std::size_t entries_scanned = 0;
};

// Exact A * B where A has entries in {-M..M} ∪ {inf} and B is finite.
// Columns of B are sorted and cut into buckets of equal width; buckets whose
// spread is at most 2M are shifted into {-M..M} and multiplied with
// minplus_bounded, while for large buckets only the first two that meet a
// finite A[i,k] are scanned per (i,j).
IntMatrix minplus_one_bounded(const IntMatrix& a, const IntMatrix& b, Value bound,
                              const BucketedOptions& options = {}, BucketedStats* stats = nullptr);

namespace detail {
IntMatrix minplus_one_bounded_unchecked(const IntMatrix& a, const IntMatrix& b, Value bound,
                                        const BucketedOptions& options, BucketedStats* stats);
}

}  // namespace trop
