#pragma once

#include <cstddef>

#include "trop/matrix.hpp"

namespace trop {

// C[i,j] = min_k A[i,k] + B[k,j]. The reference oracle for every other
// min-plus routine in the library.
IntMatrix minplus_naive(const IntMatrix& a, const IntMatrix& b);

// C[i,j] = max_k A[i,k] + B[k,j] over finite/-inf operands.
IntMatrix maxplus_naive(const IntMatrix& a, const IntMatrix& b);

// Exact min-plus product for operands with entries in {-M..M} ∪ {inf}.
//
// Each entry x is encoded as the wide integer base^(M-x) with base = 2^b > n,
// so the ordinary (+,×) product of the encoded matrices holds, in digit
// position 2M - s, the number of k with A[i,k] + B[k,j] = s. The highest
// nonzero digit of each product entry gives the minimum. Zero (inf) entries
// are skipped, so sparse operands cost proportionally less.
IntMatrix minplus_bounded(const IntMatrix& a, const IntMatrix& b, Value bound);

// {0,inf} operands: C[i,j] = 0 iff some k has A[i,k] = B[k,j] = 0.
IntMatrix boolean_product_reach(const IntMatrix& a, const IntMatrix& b);

// S[i,j] = sum of A[a,b] over a <= i, b <= j (same shape as A).
IntMatrix prefix_sum_2d(const IntMatrix& a);

// (DA)[i,j] = A[i+1,j+1] - A[i,j+1] - A[i+1,j] + A[i,j], applied `times`
// times; each application shrinks both dimensions by one.
IntMatrix finite_difference(const IntMatrix& a, std::size_t times = 1);

// Largest |(D^t A)[i,j]|; 0 when the difference matrix is empty.
Value max_abs_finite_difference(const IntMatrix& a, std::size_t times);

namespace detail {
// Unchecked kernels used inside the structured pipelines, where operands
// are derived from validated inputs and may exceed the 2^40 entry cap.
IntMatrix minplus_naive_unchecked(const IntMatrix& a, const IntMatrix& b);
IntMatrix minplus_bounded_unchecked(const IntMatrix& a, const IntMatrix& b, Value bound);
IntMatrix finite_difference_unchecked(const IntMatrix& a, std::size_t times);
}  // namespace detail

}  // namespace trop
