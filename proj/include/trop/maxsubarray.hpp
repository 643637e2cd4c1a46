#pragma once

// Maximum subarray: Kadane baselines, the bounded-entry 2D algorithm built
// on min-plus products of matrices with bounded discrete derivative, and
// the central-subarray problems. Subarrays are never empty.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trop/matrix.hpp"
#include "trop/structured.hpp"

namespace trop {

struct SubarrayResult {
    Value best_sum = 0;
    // Inclusive [first, last] index range per dimension.
    std::vector<std::pair<std::size_t, std::size_t>> box;
};

// Row-major d-dimensional integer array.
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(std::vector<std::size_t> shape, Value fill = 0);
    static Tensor from_matrix(const IntMatrix& a);

    std::size_t dims() const noexcept { return shape_.size(); }
    const std::vector<std::size_t>& shape() const noexcept { return shape_; }
    std::size_t size() const noexcept { return data_.size(); }
    std::size_t stride(std::size_t axis) const noexcept { return strides_[axis]; }

    Value& at(const std::vector<std::size_t>& idx);
    Value at(const std::vector<std::size_t>& idx) const;
    std::vector<Value>& data() noexcept { return data_; }
    const std::vector<Value>& data() const noexcept { return data_; }

private:
    std::vector<std::size_t> shape_, strides_;
    std::vector<Value> data_;
};

SubarrayResult kadane_1d(std::span<const Value> seq);

// Exact maximum over all boxes; O(n^(2d-1)).
SubarrayResult max_subarray_dd(const Tensor& tensor);
SubarrayResult max_subarray_2d(const IntMatrix& a);

// Sum of the entries inside an inclusive box.
Value box_sum(const Tensor& tensor, const std::vector<std::pair<std::size_t, std::size_t>>& box);

struct BddOptions {
    std::optional<std::size_t> block_size;
    MinPlusConfig structured;
};

// Exact A * B for B with |D^t B| <= M, through a rank-2t finite-difference
// certificate and the structured product.
IntMatrix minplus_bdd(const IntMatrix& a, const IntMatrix& b, std::size_t order, Value bound,
                      const BddOptions& options = {}, StructuredStats* stats = nullptr);

struct FastSubarrayOptions {
    BddOptions bdd;
    // Recomputes every crossing case by brute force and checks the
    // derivative bounds of the product operands; throws std::logic_error.
    bool validate = false;
};

struct FastSubarrayStats {
    std::size_t levels_checked = 0;
    std::size_t products = 0;
    Value max_operand_difference = 0;
};

// Exact maximum subarray sum of a matrix with |entries| <= M, by divide and
// conquer over columns with max-plus crossing products on prefix sums.
Value max_subarray_2d_fast(const IntMatrix& a, Value bound, const FastSubarrayOptions& options = {},
                           FastSubarrayStats* stats = nullptr);

// Array indexed by {-n..n}^d, stored row-major with the last index fastest.
class CentralArray {
public:
    CentralArray() = default;
    CentralArray(std::size_t d, std::size_t n, Value fill = 0);

    std::size_t d() const noexcept { return d_; }
    std::size_t n() const noexcept { return n_; }
    std::size_t side() const noexcept { return 2 * n_ + 1; }

    Value& at(const std::vector<long>& idx) { return data_[offset(idx)]; }
    Value at(const std::vector<long>& idx) const { return data_[offset(idx)]; }
    Value& at2(long x, long y) { return data_[static_cast<std::size_t>(x + static_cast<long>(n_)) * side() +
                                              static_cast<std::size_t>(y + static_cast<long>(n_))]; }
    Value at2(long x, long y) const {
        return data_[static_cast<std::size_t>(x + static_cast<long>(n_)) * side() +
                     static_cast<std::size_t>(y + static_cast<long>(n_))];
    }
    std::vector<Value>& data() noexcept { return data_; }
    const std::vector<Value>& data() const noexcept { return data_; }

    bool operator==(const CentralArray&) const = default;

private:
    std::size_t offset(const std::vector<long>& idx) const;

    std::size_t d_ = 0, n_ = 0;
    std::vector<Value> data_;
};

struct CentralResult {
    Value best = 0;
    std::vector<long> i;      // positive corner, entries in 1..n
    std::vector<long> delta;  // i - delta has entries in -n..-1
};

// Max over i in [n]^d and delta with -n <= i - delta < 0 of
// sum_{s in {0,1}^d} A[i - delta * s].
CentralResult central_max_subarray_naive(const CentralArray& c);

// 2D only: d[x1,x2] = max_{y<0} A[x1,y] + A[x2,y], u likewise over y>0,
// both from bounded products; answer max_{x1<0<x2} d + u.
Value central_max_subarray_2d_fast(const CentralArray& c, Value bound);

// "d n" header, then (2n+1)^(d-1) lines of 2n+1 values.
CentralArray parse_central(std::istream& in);
CentralArray read_central_file(const std::string& path);
void write_central(std::ostream& out, const CentralArray& c);

}  // namespace trop
