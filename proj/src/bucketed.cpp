#include "trop/bucketed.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "trop/minplus.hpp"
#include "trop/params.hpp"

namespace trop {

namespace detail {

IntMatrix minplus_one_bounded_unchecked(const IntMatrix& a, const IntMatrix& b, Value bound,
                                        const BucketedOptions& options, BucketedStats* stats) {
    const std::size_t m = a.rows(), n = b.rows(), p = b.cols();
    IntMatrix out(m, p, kInf);
    if (m == 0 || n == 0 || p == 0) return out;

    const std::size_t width =
        std::clamp<std::size_t>(options.bucket_size.value_or(params::bucket_size(bound, n, options.omega_eff)), 1, n);
    const std::size_t buckets = (n + width - 1) / width;

    // order[j * n + r]: row index of the r-th smallest entry of column j (ties by row).
    std::vector<std::size_t> order(p * n);
    for (std::size_t j = 0; j < p; ++j) {
        auto first = order.begin() + static_cast<long>(j * n);
        std::iota(first, first + static_cast<long>(n), std::size_t{0});
        std::stable_sort(first, first + static_cast<long>(n),
                         [&](std::size_t x, std::size_t y) { return b(x, j) < b(y, j); });
    }
    auto bucket_begin = [&](std::size_t l) { return l * width; };
    auto bucket_end = [&](std::size_t l) { return std::min(n, (l + 1) * width); };
    auto smallest = [&](std::size_t j, std::size_t l) { return b(order[j * n + bucket_begin(l)], j); };
    auto largest = [&](std::size_t j, std::size_t l) { return b(order[j * n + bucket_end(l) - 1], j); };

    std::vector<char> large(p * buckets);
    BucketedStats local;
    local.bucket_size = width;
    for (std::size_t j = 0; j < p; ++j)
        for (std::size_t l = 0; l < buckets; ++l) {
            const bool is_large = largest(j, l) - smallest(j, l) > 2 * bound;
            large[j * buckets + l] = is_large;
            ++(is_large ? local.large_buckets : local.small_buckets);
        }

    // Small buckets: shift into {-M..M} and use the bounded product.
    for (std::size_t l = 0; l < buckets; ++l) {
        IntMatrix shifted(n, p, kInf);
        bool any = false;
        for (std::size_t j = 0; j < p; ++j) {
            if (large[j * buckets + l]) continue;
            const Value base = smallest(j, l) + bound;
            for (std::size_t r = bucket_begin(l); r < bucket_end(l); ++r) {
                const std::size_t k = order[j * n + r];
                shifted(k, j) = b(k, j) - base;
            }
            any = true;
        }
        if (!any) continue;
        ++local.bounded_products;
        IntMatrix partial = minplus_bounded_unchecked(a, shifted, bound);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < p; ++j) {
                if (large[j * buckets + l] || partial(i, j) == kInf) continue;
                out(i, j) = std::min(out(i, j), partial(i, j) + smallest(j, l) + bound);
            }
    }

    // Large buckets: find which ones meet a finite A[i,k], then scan the first two.
    IntMatrix finite_pattern(m, n, kInf);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (a(i, k) != kInf) finite_pattern(i, k) = 0;

    std::vector<std::vector<char>> reach(buckets);
    for (std::size_t l = 0; l < buckets; ++l) {
        IntMatrix members(n, p, kInf);
        bool any = false;
        for (std::size_t j = 0; j < p; ++j) {
            if (!large[j * buckets + l]) continue;
            for (std::size_t r = bucket_begin(l); r < bucket_end(l); ++r) members(order[j * n + r], j) = 0;
            any = true;
        }
        if (!any) continue;
        IntMatrix hit = boolean_product_reach(finite_pattern, members);
        reach[l].resize(m * p);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < p; ++j) reach[l][i * p + j] = hit(i, j) == 0;
    }

    // rank[j * n + k]: position of row k in the sorted column j.
    std::vector<std::size_t> rank(p * n);
    for (std::size_t j = 0; j < p; ++j)
        for (std::size_t r = 0; r < n; ++r) rank[j * n + order[j * n + r]] = r;
    std::vector<std::size_t> finite_k;
    for (std::size_t i = 0; i < m; ++i) {
        finite_k.clear();
        for (std::size_t k = 0; k < n; ++k)
            if (a(i, k) != kInf) finite_k.push_back(k);
        for (std::size_t j = 0; j < p; ++j) {
            std::size_t seen = 0;
            Value best = out(i, j);
            for (std::size_t l = 0; l < buckets && seen < 2; ++l) {
                if (!large[j * buckets + l] || !reach[l][i * p + j]) continue;
                ++seen;
                ++local.large_buckets_scanned;
                // Scan whichever is shorter: the bucket or the finite part of row i.
                if (finite_k.size() < bucket_end(l) - bucket_begin(l)) {
                    for (std::size_t k : finite_k) {
                        ++local.entries_scanned;
                        if (rank[j * n + k] / width == l) best = std::min(best, a(i, k) + b(k, j));
                    }
                } else {
                    for (std::size_t r = bucket_begin(l); r < bucket_end(l); ++r) {
                        const std::size_t k = order[j * n + r];
                        ++local.entries_scanned;
                        if (a(i, k) != kInf) best = std::min(best, a(i, k) + b(k, j));
                    }
                }
            }
            out(i, j) = best;
        }
    }

    if (options.check_dominance) {
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < p; ++j) {
                Value truth = kInf;
                for (std::size_t k = 0; k < n; ++k)
                    if (a(i, k) != kInf) truth = std::min(truth, a(i, k) + b(k, j));
                if (truth == kInf) continue;
                std::vector<char> allowed(buckets, 0);
                std::size_t seen = 0;
                for (std::size_t l = 0; l < buckets; ++l) {
                    if (!large[j * buckets + l]) {
                        allowed[l] = 1;
                    } else if (reach[l][i * p + j] && seen < 2) {
                        allowed[l] = 1;
                        ++seen;
                    }
                }
                bool witnessed = false;
                for (std::size_t k = 0; k < n && !witnessed; ++k)
                    witnessed = a(i, k) != kInf && a(i, k) + b(k, j) == truth && allowed[rank[j * n + k] / width];
                if (!witnessed)
                    throw std::logic_error("bucket dominance violated at (" + std::to_string(i) + ", " +
                                           std::to_string(j) + ")");
            }
        }
    }

    if (stats) *stats = local;
    return out;
}

}  // namespace detail

IntMatrix minplus_one_bounded(const IntMatrix& a, const IntMatrix& b, Value bound, const BucketedOptions& options,
                              BucketedStats* stats) {
    if (a.cols() != b.rows()) throw DimensionError("minplus_one_bounded: inner dimensions differ");
    if (bound < 1) throw PreconditionError("minplus_one_bounded: M must be at least 1");
    if (bound > kEntryCap) throw OverflowError("minplus_one_bounded: M exceeds 2^40");
    if (options.bucket_size && *options.bucket_size == 0)
        throw PreconditionError("minplus_one_bounded: bucket size must be positive");
    for (Value v : a.values())
        if (v != kInf && (v < -bound || v > bound))
            throw PreconditionError("minplus_one_bounded: A entry " + format_value(v) + " outside {-M..M} ∪ {inf}");
    require_all_finite(b, "minplus_one_bounded B");
    require_minplus_domain(b, "minplus_one_bounded B");
    return detail::minplus_one_bounded_unchecked(a, b, bound, options, stats);
}

}  // namespace trop
