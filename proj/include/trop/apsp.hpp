#pragma once

// All-pairs shortest paths on clustered graphs whose inter-cluster weights
// are within W of inner products p^{i,j}(v) . q^{i,j}(u).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trop/certificate.hpp"
#include "trop/matrix.hpp"
#include "trop/structured.hpp"

namespace trop {

class NegativeCycleError : public InputError {
public:
    explicit NegativeCycleError(std::vector<std::size_t> cycle);
    const std::vector<std::size_t>& cycle() const noexcept { return cycle_; }

private:
    std::vector<std::size_t> cycle_;
};

struct GWCGraph {
    std::size_t n = 0;         // vertices
    std::size_t clusters = 0;  // t, all of size n / t
    std::size_t dim = 0;       // d
    Value error_bound = 0;     // W
    std::vector<std::size_t> cluster_of;
    IntMatrix weights;
    // For the ordered pair (i, j): p[i * t + j] holds one d-vector per member
    // of cluster i (in vertex order), q[i * t + j] one per member of cluster j.
    std::vector<std::vector<Value>> p, q;

    std::vector<std::size_t> members(std::size_t cluster) const;
    // Shapes, equal cluster sizes and |w(v,u) - p.q| <= W; throws on failure.
    void validate() const;
    // Largest |w(v,u) - p.q| over all pairs.
    Value max_deviation() const;
};

struct GWCParams {
    std::size_t n = 0, clusters = 1, dim = 2;
    Value error_bound = 0;
    std::uint64_t seed = 0;
};

// Weights are phi(v) - phi(u) + c_{ij} + (extra coordinates) + noise with
// c_{ij} >= W and noise uniform in [-W, W], so every cycle is nonnegative
// while individual weights take both signs.
GWCGraph generate_gwc(const GWCParams& params);

// Exact A * weights, with the cluster grid as block grid and (p, q) as the
// certificate factors.
IntMatrix gwc_minplus(const IntMatrix& a, const GWCGraph& g, const MinPlusConfig& config = {},
                      StructuredStats* stats = nullptr);

// Certificate of the cluster-contiguous weight matrix W[perm, perm].
BlockCertificate gwc_certificate(const GWCGraph& g, const std::vector<std::size_t>& perm);
std::vector<std::size_t> cluster_permutation(const GWCGraph& g);

struct ApspOptions {
    std::optional<std::size_t> ell;
    MinPlusConfig structured;
};

struct ApspStats {
    std::size_t ell = 0;
    std::size_t products = 0;
    std::size_t samples = 0;
    bool reached_fixpoint = false;
};

IntMatrix apsp_gwc(const GWCGraph& g, const ApspOptions& options = {}, ApspStats* stats = nullptr);
IntMatrix apsp_floyd_warshall(const IntMatrix& weights);

// ceil(4 (n / ell) ln n) vertices drawn uniformly (duplicates removed).
std::vector<std::size_t> sample_vertices(std::size_t n, std::size_t ell, std::uint64_t seed);

// Johnson potentials; throws NegativeCycleError with a witness cycle.
std::vector<Value> johnson_potentials(const IntMatrix& weights);

// Entry (u, v): min over sources s of d(u, s) + d(s, v), INF if no source
// connects them. Distances by Dijkstra on reweighted edges.
IntMatrix sampled_sssp_pass(const IntMatrix& weights, const std::vector<std::size_t>& sources);

// Header "n t d W"; n cluster ids; n weight rows; then "P i j" and "Q i j"
// blocks of d-vectors for every ordered cluster pair.
GWCGraph parse_gwc(std::istream& in);
GWCGraph read_gwc_file(const std::string& path);
void write_gwc(std::ostream& out, const GWCGraph& g);

}  // namespace trop
