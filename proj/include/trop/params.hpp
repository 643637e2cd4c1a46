#pragma once

// Default-parameter formulas. Every balancing formula is instantiated with
// omega_eff, the exponent of the matrix multiplication backend actually in
// use (3.0 for the schoolbook kernels in this library).

#include <cstddef>
#include <cstdint>

#include "trop/matrix.hpp"

namespace trop {

struct GlobalConfig {
    double omega_eff = 3.0;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    int verbosity = 0;

    void validate() const;
};

namespace params {

// Bucket width for the one-side-bounded product: sqrt(M) * n^((omega-1)/2).
std::size_t bucket_size(Value bound, std::size_t n, double omega_eff);

// Sampling parameter: ceil(n^((3-omega)/4) * W^(-1/4)) when W <= n^(3-omega), else 1.
std::size_t rho(std::size_t n, Value error_bound, double omega_eff);

// Number of sampling rounds: ceil(10 * rho * ln n).
std::size_t rounds(std::size_t rho, std::size_t n);

// Block width for bounded-discrete-derivative products:
// (n^((3-omega)/2) * M^(-1/2))^(t/(t^2+2)).
std::size_t bdd_block_size(std::size_t n, Value bound, std::size_t order, double omega_eff);

// Monotone products: block n^((4-omega)/6) m^(-1/6) and clamp threshold
// n^((1-omega)/3) m^(2/3) when m >= n^((omega-1)/2); otherwise n^((3-omega)/4) and 1.
std::size_t monotone_block_size(std::size_t n, Value m, double omega_eff);
Value monotone_gamma(std::size_t n, Value m, double omega_eff);

// Range-mode frequency threshold: n^((8+omega)/(19+omega)).
std::size_t range_mode_threshold(std::size_t n, double omega_eff);

// Path-length threshold for clustered APSP. `large_w` selects the regime
// n^((3-omega)/8) / W^(1/8); otherwise n^(delta / (2 floor((d+1)/2))).
std::size_t apsp_path_threshold(std::size_t n, std::size_t clusters, std::size_t dim, Value error_bound,
                                double omega_eff);

}  // namespace params
}  // namespace trop
