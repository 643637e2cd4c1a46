#include "trop/certificate.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "trop/minplus.hpp"

namespace trop {

namespace {

// |X.Y| above this would let A[i,k] + X.Y leave the 64-bit range.
constexpr __int128 kProductCap = __int128{1} << 61;

Value saturate(__int128 v) {
    if (v > std::numeric_limits<Value>::max() - 1) return std::numeric_limits<Value>::max() - 1;
    return static_cast<Value>(v);
}

Value checked_factor(__int128 v) {
    if (v > kProductCap || v < -kProductCap) throw OverflowError("certificate factor entry overflows");
    return static_cast<Value>(v);
}

void require_certifiable(const IntMatrix& b, std::size_t block_size, const char* who) {
    if (block_size == 0) throw PreconditionError(std::string(who) + ": block size must be positive");
    require_all_finite(b, who);
    require_minplus_domain(b, who);
}

struct LocalFactors {
    std::size_t rank = 0;
    std::vector<Value> x, y;
};

// Rank-2t factors of one block from the telescoping identity
// B[i,j] = sum_{a<i, b<j} (DB)[a,b] - B[0,0] + B[i,0] + B[0,j].
LocalFactors difference_factors(const IntMatrix& blk, std::size_t order) {
    const std::size_t r = blk.rows(), c = blk.cols();
    LocalFactors out;
    if (order == 0) {
        out.x.assign(0, 0);
        out.y.assign(0, 0);
        return out;
    }
    LocalFactors inner = difference_factors(detail::finite_difference_unchecked(blk, 1), order - 1);
    const std::size_t q = inner.rank;
    out.rank = q + 2;
    out.x.assign(r * out.rank, 0);
    out.y.assign(c * out.rank, 0);

    std::vector<__int128> run(q, 0);
    for (std::size_t i = 0; i < r; ++i) {
        Value* xi = out.x.data() + i * out.rank;
        xi[0] = 1;
        xi[1] = checked_factor(static_cast<__int128>(blk(i, 0)) - blk(0, 0));
        for (std::size_t s = 0; s < q; ++s) xi[2 + s] = checked_factor(run[s]);
        if (i + 1 < r)
            for (std::size_t s = 0; s < q; ++s) run[s] += inner.x[i * q + s];
    }
    std::fill(run.begin(), run.end(), 0);
    for (std::size_t j = 0; j < c; ++j) {
        Value* yj = out.y.data() + j * out.rank;
        yj[0] = blk(0, j);
        yj[1] = 1;
        for (std::size_t s = 0; s < q; ++s) yj[2 + s] = checked_factor(run[s]);
        if (j + 1 < c)
            for (std::size_t s = 0; s < q; ++s) run[s] += inner.y[j * q + s];
    }
    return out;
}

}  // namespace

BlockCertificate::BlockCertificate(std::size_t rows, std::size_t cols, std::size_t block_size, std::size_t rank)
    : rows_(rows), cols_(cols), block_(block_size), rank_(rank) {
    if (block_size == 0) throw PreconditionError("certificate block size must be positive");
    row_blocks_ = (rows + block_ - 1) / block_;
    col_blocks_ = (cols + block_ - 1) / block_;
    blocks_.resize(row_blocks_ * col_blocks_);
    for (std::size_t kb = 0; kb < row_blocks_; ++kb)
        for (std::size_t jb = 0; jb < col_blocks_; ++jb) {
            auto& f = blocks_[kb * col_blocks_ + jb];
            f.x.assign((row_block_end(kb) - block_begin(kb)) * rank_, 0);
            f.y.assign((col_block_end(jb) - block_begin(jb)) * rank_, 0);
        }
}

std::size_t BlockCertificate::row_block_end(std::size_t kb) const noexcept {
    return std::min(rows_, (kb + 1) * block_);
}

std::size_t BlockCertificate::col_block_end(std::size_t jb) const noexcept {
    return std::min(cols_, (jb + 1) * block_);
}

std::span<const Value> BlockCertificate::x(std::size_t k, std::size_t j) const {
    const auto& f = factors(k / block_, j / block_);
    return {f.x.data() + (k % block_) * rank_, rank_};
}

std::span<const Value> BlockCertificate::y(std::size_t k, std::size_t j) const {
    const auto& f = factors(k / block_, j / block_);
    return {f.y.data() + (j % block_) * rank_, rank_};
}

std::span<Value> BlockCertificate::x_mut(std::size_t k, std::size_t j) {
    auto& f = factors(k / block_, j / block_);
    return {f.x.data() + (k % block_) * rank_, rank_};
}

std::span<Value> BlockCertificate::y_mut(std::size_t k, std::size_t j) {
    auto& f = factors(k / block_, j / block_);
    return {f.y.data() + (j % block_) * rank_, rank_};
}

__int128 BlockCertificate::approx(std::size_t k, std::size_t j) const {
    auto xs = x(k, j);
    auto ys = y(k, j);
    __int128 s = 0;
    for (std::size_t r = 0; r < rank_; ++r) s += static_cast<__int128>(xs[r]) * ys[r];
    return s;
}

CertificateCheck verify_certificate(const IntMatrix& b, const BlockCertificate& cert) {
    CertificateCheck check;
    if (b.rows() != cert.rows() || b.cols() != cert.cols()) return check;
    __int128 worst = 0;
    for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            if (!is_finite(b(k, j))) return check;
            const __int128 approx = cert.approx(k, j);
            if (approx > kProductCap || approx < -kProductCap) {
                check.max_deviation = saturate(kProductCap);
                return check;
            }
            __int128 dev = approx - b(k, j);
            if (dev < 0) dev = -dev;
            worst = std::max(worst, dev);
        }
    }
    check.max_deviation = saturate(worst);
    check.ok = worst <= cert.error_bound();
    return check;
}

Value tighten_error_bound(const IntMatrix& b, BlockCertificate& cert) {
    cert.set_error_bound(std::numeric_limits<Value>::max() - 1);
    auto check = verify_certificate(b, cert);
    if (!check.ok) throw OverflowError("certificate does not fit the matrix or overflows");
    cert.set_error_bound(check.max_deviation);
    return check.max_deviation;
}

BlockCertificate cert_from_bounded_difference(const IntMatrix& b, Value row_step_bound, std::size_t block_size) {
    require_certifiable(b, block_size, "cert_from_bounded_difference");
    for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t j = 0; j + 1 < b.cols(); ++j) {
            const Value step = b(k, j) - b(k, j + 1);
            if (step > row_step_bound || step < -row_step_bound)
                throw PreconditionError("cert_from_bounded_difference: |B[" + std::to_string(k) + "," +
                                        std::to_string(j) + "] - B[" + std::to_string(k) + "," +
                                        std::to_string(j + 1) + "]| exceeds Q = " + std::to_string(row_step_bound));
        }
    BlockCertificate cert(b.rows(), b.cols(), block_size, 1);
    for (std::size_t kb = 0; kb < cert.row_blocks(); ++kb)
        for (std::size_t jb = 0; jb < cert.col_blocks(); ++jb) {
            const std::size_t j0 = cert.block_begin(jb);
            for (std::size_t k = cert.block_begin(kb); k < cert.row_block_end(kb); ++k) cert.x_mut(k, j0)[0] = b(k, j0);
            for (std::size_t j = j0; j < cert.col_block_end(jb); ++j)
                cert.y_mut(cert.block_begin(kb), j)[0] = 1;
        }
    tighten_error_bound(b, cert);
    return cert;
}

BlockCertificate cert_from_finite_difference(const IntMatrix& b, std::size_t order, std::size_t block_size,
                                             std::optional<Value> bound) {
    require_certifiable(b, block_size, "cert_from_finite_difference");
    if (order < 1) throw PreconditionError("cert_from_finite_difference: order must be >= 1");
    if (bound) {
        const Value worst = max_abs_finite_difference(b, order);
        if (worst > *bound)
            throw PreconditionError("cert_from_finite_difference: |D^" + std::to_string(order) +
                                    " B| reaches " + std::to_string(worst) + " > M = " + std::to_string(*bound));
    }
    BlockCertificate cert(b.rows(), b.cols(), block_size, 2 * order);
    for (std::size_t kb = 0; kb < cert.row_blocks(); ++kb) {
        for (std::size_t jb = 0; jb < cert.col_blocks(); ++jb) {
            const std::size_t k0 = cert.block_begin(kb), j0 = cert.block_begin(jb);
            const std::size_t nr = cert.row_block_end(kb) - k0, nc = cert.col_block_end(jb) - j0;
            LocalFactors local = difference_factors(b.block(k0, j0, nr, nc), order);
            auto& f = cert.factors(kb, jb);
            f.x = std::move(local.x);
            f.y = std::move(local.y);
        }
    }
    tighten_error_bound(b, cert);
    return cert;
}

void require_monotone_rows(const IntMatrix& b, Value column_sum_step) {
    require_all_finite(b, "monotone product B");
    for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t j = 0; j + 1 < b.cols(); ++j)
            if (b(k, j + 1) > b(k, j))
                throw PreconditionError("row " + std::to_string(k) + " of B increases at column " +
                                        std::to_string(j + 1));
    __int128 prev = 0;
    for (std::size_t j = 0; j < b.cols(); ++j) {
        __int128 sum = 0;
        for (std::size_t k = 0; k < b.rows(); ++k) sum += b(k, j);
        if (j > 0) {
            __int128 diff = prev - sum;
            if (diff < 0) diff = -diff;
            if (diff > column_sum_step)
                throw PreconditionError("column sums of B differ by more than m = " + std::to_string(column_sum_step) +
                                        " between columns " + std::to_string(j - 1) + " and " + std::to_string(j));
        }
        prev = sum;
    }
}

MonotoneCertificate cert_from_monotone(const IntMatrix& b, Value column_sum_step, std::size_t block_size,
                                       Value gamma) {
    require_certifiable(b, block_size, "cert_from_monotone");
    if (gamma < 1) throw PreconditionError("cert_from_monotone: gamma must be >= 1");
    require_monotone_rows(b, column_sum_step);

    MonotoneCertificate out;
    Value top = 0;
    bool any = false;
    for (Value v : b.values()) {
        top = any ? std::max(top, v) : v;
        any = true;
    }
    out.sentinel = top + 1;
    out.clamped = b;

    BlockCertificate cert(b.rows(), b.cols(), block_size, 1);
    for (std::size_t jb = 0; jb < cert.col_blocks(); ++jb) {
        const std::size_t c0 = cert.block_begin(jb), c1 = cert.col_block_end(jb);
        for (std::size_t k = 0; k < b.rows(); ++k) {
            if (b(k, c0) - b(k, c1 - 1) >= gamma) {
                for (std::size_t j = c0; j < c1; ++j) out.clamped(k, j) = out.sentinel;
                out.corrections.push_back({k, c0, c1});
            }
        }
    }
    for (std::size_t kb = 0; kb < cert.row_blocks(); ++kb)
        for (std::size_t jb = 0; jb < cert.col_blocks(); ++jb) {
            const std::size_t j0 = cert.block_begin(jb);
            for (std::size_t k = cert.block_begin(kb); k < cert.row_block_end(kb); ++k)
                cert.x_mut(k, j0)[0] = out.clamped(k, j0);
            for (std::size_t j = j0; j < cert.col_block_end(jb); ++j) cert.y_mut(cert.block_begin(kb), j)[0] = 1;
        }
    tighten_error_bound(out.clamped, cert);
    out.cert = std::move(cert);
    return out;
}

}  // namespace trop
