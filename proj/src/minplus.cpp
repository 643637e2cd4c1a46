#include "trop/minplus.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace trop {

namespace {

void require_conforming(const IntMatrix& a, const IntMatrix& b, const char* op) {
    if (a.cols() != b.rows())
        throw DimensionError(std::string(op) + ": A is " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " but B is " + std::to_string(b.rows()) + "x" +
                             std::to_string(b.cols()));
}

void require_bounded(const IntMatrix& m, Value bound, const char* name) {
    for (Value v : m.values()) {
        if (v == kInf) continue;
        if (v == kNegInf || v > bound || v < -bound)
            throw PreconditionError(std::string(name) + ": entry " + format_value(v) +
                                    " outside {-M..M} ∪ {inf} for M = " + std::to_string(bound));
    }
}

// Accumulates one product entry: a little-endian array of 64-bit limbs.
inline void add_power_of_two(std::uint64_t* limbs, std::size_t pos) {
    std::size_t limb = pos >> 6;
    std::uint64_t add = std::uint64_t{1} << (pos & 63);
    limbs[limb] += add;
    while (limbs[limb] < add) {  // carry
        ++limb;
        add = 1;
        limbs[limb] += 1;
    }
}

// Highest set bit, or -1 when the wide integer is zero.
inline long highest_bit(const std::uint64_t* limbs, std::size_t count) {
    for (std::size_t l = count; l-- > 0;)
        if (limbs[l]) return static_cast<long>(l * 64 + 63 - std::countl_zero(limbs[l]));
    return -1;
}

}  // namespace

namespace detail {

IntMatrix minplus_naive_unchecked(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t m = a.rows(), n = a.cols(), p = b.cols();
    IntMatrix c(m, p, kInf);
    for (std::size_t i = 0; i < m; ++i) {
        auto crow = c.row(i);
        for (std::size_t k = 0; k < n; ++k) {
            const Value x = a(i, k);
            if (x == kInf) continue;
            auto brow = b.row(k);
            for (std::size_t j = 0; j < p; ++j) {
                const Value y = brow[j];
                if (y == kInf) continue;
                const Value s = x + y;
                if (s < crow[j]) crow[j] = s;
            }
        }
    }
    return c;
}

IntMatrix minplus_bounded_unchecked(const IntMatrix& a, const IntMatrix& b, Value bound) {
    const std::size_t m = a.rows(), n = a.cols(), p = b.cols();
    IntMatrix c(m, p, kInf);
    if (n == 0 || m == 0 || p == 0) return c;

    const std::size_t digit_bits = std::max<std::size_t>(1, std::bit_width(n));
    const std::size_t digits = 4 * static_cast<std::size_t>(bound) + 1;
    const std::size_t limbs = (digits * digit_bits + 63) / 64 + 1;

    // Encoded exponents: entry x -> base^(bound - x); inf -> the zero integer.
    std::vector<long> exp_a(m * n, -1);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (a(i, k) != kInf) exp_a[i * n + k] = static_cast<long>(bound - a(i, k));

    struct Term {
        std::size_t col;
        std::size_t exponent;
    };
    std::vector<std::vector<Term>> b_rows(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < p; ++j)
            if (b(k, j) != kInf) b_rows[k].push_back({j, static_cast<std::size_t>(bound - b(k, j))});

    // Column chunks keep the accumulator buffer bounded for large M.
    const std::size_t chunk = std::clamp<std::size_t>((std::size_t{1} << 20) / limbs, 1, p);
    std::vector<std::uint64_t> acc(chunk * limbs);

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t c0 = 0; c0 < p; c0 += chunk) {
            const std::size_t c1 = std::min(p, c0 + chunk);
            std::fill(acc.begin(), acc.begin() + static_cast<long>((c1 - c0) * limbs), 0);
            bool any = false;
            for (std::size_t k = 0; k < n; ++k) {
                const long ea = exp_a[i * n + k];
                if (ea < 0) continue;
                const auto& terms = b_rows[k];
                auto it = std::lower_bound(terms.begin(), terms.end(), c0,
                                           [](const Term& t, std::size_t col) { return t.col < col; });
                for (; it != terms.end() && it->col < c1; ++it) {
                    add_power_of_two(acc.data() + (it->col - c0) * limbs,
                                     (static_cast<std::size_t>(ea) + it->exponent) * digit_bits);
                    any = true;
                }
            }
            if (!any) continue;
            for (std::size_t j = c0; j < c1; ++j) {
                const long h = highest_bit(acc.data() + (j - c0) * limbs, limbs);
                if (h < 0) continue;
                const Value top_digit = static_cast<Value>(static_cast<std::size_t>(h) / digit_bits);
                c(i, j) = 2 * bound - top_digit;
            }
        }
    }
    return c;
}

IntMatrix finite_difference_unchecked(const IntMatrix& a, std::size_t times) {
    IntMatrix cur = a;
    for (std::size_t t = 0; t < times; ++t) {
        const std::size_t r = cur.rows() ? cur.rows() - 1 : 0;
        const std::size_t c = cur.cols() ? cur.cols() - 1 : 0;
        IntMatrix next(r, c, 0);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                next(i, j) = cur(i + 1, j + 1) - cur(i, j + 1) - cur(i + 1, j) + cur(i, j);
        cur = std::move(next);
    }
    return cur;
}

}  // namespace detail

IntMatrix minplus_naive(const IntMatrix& a, const IntMatrix& b) {
    require_conforming(a, b, "minplus_naive");
    require_minplus_domain(a, "minplus_naive A");
    require_minplus_domain(b, "minplus_naive B");
    return detail::minplus_naive_unchecked(a, b);
}

IntMatrix maxplus_naive(const IntMatrix& a, const IntMatrix& b) {
    require_conforming(a, b, "maxplus_naive");
    for (const IntMatrix* m : {&a, &b})
        for (Value v : m->values())
            if (v == kInf) throw PreconditionError("maxplus_naive: +inf entry in a max-plus operand");
    return negate(minplus_naive(negate(a), negate(b)));
}

IntMatrix minplus_bounded(const IntMatrix& a, const IntMatrix& b, Value bound) {
    require_conforming(a, b, "minplus_bounded");
    if (bound < 0) throw PreconditionError("minplus_bounded: negative bound");
    if (bound > kEntryCap) throw OverflowError("minplus_bounded: bound exceeds 2^40");
    require_bounded(a, bound, "minplus_bounded A");
    require_bounded(b, bound, "minplus_bounded B");
    return detail::minplus_bounded_unchecked(a, b, bound);
}

IntMatrix boolean_product_reach(const IntMatrix& a, const IntMatrix& b) {
    require_conforming(a, b, "boolean_product_reach");
    for (const IntMatrix* mat : {&a, &b})
        for (Value v : mat->values())
            if (v != 0 && v != kInf)
                throw PreconditionError("boolean_product_reach: entry " + format_value(v) + " not in {0, inf}");

    const std::size_t m = a.rows(), n = a.cols(), p = b.cols();
    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> a_bits(m * words, 0), b_bits(p * words, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (a(i, k) == 0) a_bits[i * words + k / 64] |= std::uint64_t{1} << (k % 64);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < p; ++j)
            if (b(k, j) == 0) b_bits[j * words + k / 64] |= std::uint64_t{1} << (k % 64);

    IntMatrix c(m, p, kInf);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < p; ++j)
            for (std::size_t w = 0; w < words; ++w)
                if (a_bits[i * words + w] & b_bits[j * words + w]) {
                    c(i, j) = 0;
                    break;
                }
    return c;
}

IntMatrix prefix_sum_2d(const IntMatrix& a) {
    require_all_finite(a, "prefix_sum_2d");
    IntMatrix s(a.rows(), a.cols(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            __int128 v = a(i, j);
            if (i) v += s(i - 1, j);
            if (j) v += s(i, j - 1);
            if (i && j) v -= s(i - 1, j - 1);
            if (v > (__int128{1} << 62) || v < -(__int128{1} << 62))
                throw OverflowError("prefix_sum_2d: partial sum overflows");
            s(i, j) = static_cast<Value>(v);
        }
    }
    return s;
}

IntMatrix finite_difference(const IntMatrix& a, std::size_t times) {
    if (times < 1) throw PreconditionError("finite_difference: repetitions must be >= 1");
    if (a.rows() < times + 1 || a.cols() < times + 1)
        throw DimensionError("finite_difference: matrix smaller than (t+1)x(t+1)");
    require_all_finite(a, "finite_difference");
    return detail::finite_difference_unchecked(a, times);
}

Value max_abs_finite_difference(const IntMatrix& a, std::size_t times) {
    IntMatrix d = detail::finite_difference_unchecked(a, times);
    Value best = 0;
    for (Value v : d.values()) best = std::max(best, v < 0 ? -v : v);
    return best;
}

}  // namespace trop
