#pragma once

// Per-block low-rank certificates.
//
// A BlockCertificate for an n x p matrix B cuts B into blocks on a square
// grid of width `block_size` anchored at (0, 0) (trailing blocks may be
// short). For each block (k', j') it stores integer factors X_{k',j'} (one
// rank-length vector per row k of the block) and Y_{k',j'} (one per column
// j) such that |B[k,j] - X(k) . Y(j)| <= error_bound for every covered cell.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "trop/matrix.hpp"

namespace trop {

struct BlockFactors {
    std::vector<Value> x;  // row_count x rank, row-major
    std::vector<Value> y;  // col_count x rank, row-major
};

class BlockCertificate {
public:
    BlockCertificate() = default;
    BlockCertificate(std::size_t rows, std::size_t cols, std::size_t block_size, std::size_t rank);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t block_size() const noexcept { return block_; }
    std::size_t rank() const noexcept { return rank_; }
    Value error_bound() const noexcept { return error_bound_; }
    void set_error_bound(Value w) noexcept { error_bound_ = w; }

    std::size_t row_blocks() const noexcept { return row_blocks_; }
    std::size_t col_blocks() const noexcept { return col_blocks_; }
    std::size_t block_begin(std::size_t b) const noexcept { return b * block_; }
    std::size_t row_block_end(std::size_t kb) const noexcept;
    std::size_t col_block_end(std::size_t jb) const noexcept;

    BlockFactors& factors(std::size_t kb, std::size_t jb) { return blocks_[kb * col_blocks_ + jb]; }
    const BlockFactors& factors(std::size_t kb, std::size_t jb) const { return blocks_[kb * col_blocks_ + jb]; }

    // X_{k',j'}(k) and Y_{k',j'}(j) for global indices k, j.
    std::span<const Value> x(std::size_t k, std::size_t j) const;
    std::span<const Value> y(std::size_t k, std::size_t j) const;
    std::span<Value> x_mut(std::size_t k, std::size_t j);
    std::span<Value> y_mut(std::size_t k, std::size_t j);

    // X(k) . Y(j) with the factors of the block containing (k, j).
    __int128 approx(std::size_t k, std::size_t j) const;

private:
    std::size_t rows_ = 0, cols_ = 0, block_ = 1, rank_ = 0;
    std::size_t row_blocks_ = 0, col_blocks_ = 0;
    Value error_bound_ = 0;
    std::vector<BlockFactors> blocks_;
};

struct CertificateCheck {
    bool ok = false;
    Value max_deviation = 0;
};

// ok iff shapes agree, B is finite and max |B - X.Y| <= error_bound.
CertificateCheck verify_certificate(const IntMatrix& b, const BlockCertificate& cert);

// Recomputes the exact max deviation and stores it as the error bound.
Value tighten_error_bound(const IntMatrix& b, BlockCertificate& cert);

// Rows with |B[k,j] - B[k,j+1]| <= Q: rank 1, X(k) = [B[k, first column of
// the block]], Y(j) = [1].
BlockCertificate cert_from_bounded_difference(const IntMatrix& b, Value row_step_bound, std::size_t block_size);

// Matrices with |D^t B| <= M: rank 2t per block, built recursively from the
// identity B[i,j] = sum_{a<i,b<j} (DB)[a,b] - B[0,0] + B[i,0] + B[0,j]
// applied to a rank-(2t-2) certificate of DB restricted to the block.
// When `bound` is given the precondition is verified.
BlockCertificate cert_from_finite_difference(const IntMatrix& b, std::size_t order, std::size_t block_size,
                                             std::optional<Value> bound = {});

struct ClampedCells {
    std::size_t row;
    std::size_t col_begin;
    std::size_t col_end;  // exclusive
};

struct MonotoneCertificate {
    IntMatrix clamped;  // B with clamped cells set to `sentinel`
    BlockCertificate cert;
    std::vector<ClampedCells> corrections;
    Value sentinel = 0;
};

// Rows of B non-increasing, adjacent column sums differing by at most m.
// Within every column block, rows that drop by >= gamma across the block are
// clamped to the sentinel (global max + 1); the rest span < gamma and get a
// rank-1 certificate X(k) = [B^(k, first column)], Y(j) = [1].
MonotoneCertificate cert_from_monotone(const IntMatrix& b, Value column_sum_step, std::size_t block_size, Value gamma);

// Checks the two monotone-product preconditions; throws PreconditionError.
void require_monotone_rows(const IntMatrix& b, Value column_sum_step);

}  // namespace trop
