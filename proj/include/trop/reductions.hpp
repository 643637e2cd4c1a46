#pragma once

// Constructive reductions between clique, hyperclique and central-subarray
// problems, with exhaustive oracles for tiny instances.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "trop/matrix.hpp"
#include "trop/maxsubarray.hpp"

namespace trop {

// k-partite graph, n vertices per part, complete between parts.
struct WeightedCliqueInstance {
    std::size_t parts = 0, n = 0;
    // weights[i * parts + j] for i < j: n x n matrix, entry (a, b) is the
    // weight of edge (part i vertex a, part j vertex b).
    std::vector<IntMatrix> weights;

    WeightedCliqueInstance() = default;
    WeightedCliqueInstance(std::size_t parts, std::size_t n);
    Value& weight(std::size_t i, std::size_t a, std::size_t j, std::size_t b);
    Value weight(std::size_t i, std::size_t a, std::size_t j, std::size_t b) const;
    Value max_abs_weight() const;
};

// d pairs of vertex sets (V_r, U_r), n vertices each. A hyperedge picks one
// vertex from each pair; every other d-tuple has weight zero by
// construction. Side 0 is V_r, side 1 is U_r.
class TwoSidedHypergraph {
public:
    TwoSidedHypergraph() = default;
    TwoSidedHypergraph(std::size_t d, std::size_t n);

    std::size_t d() const noexcept { return d_; }
    std::size_t n() const noexcept { return n_; }

    // sides[r] in {0, 1}, idx[r] in [0, n).
    Value& weight(const std::vector<int>& sides, const std::vector<std::size_t>& idx) {
        return w_[offset(sides, idx)];
    }
    Value weight(const std::vector<int>& sides, const std::vector<std::size_t>& idx) const {
        return w_[offset(sides, idx)];
    }
    const std::vector<Value>& raw() const noexcept { return w_; }
    Value max_abs_weight() const;
    // Sum over all 2^d hyperedges among the chosen v_r in V_r and u_r in U_r.
    Value clique_weight(const std::vector<std::size_t>& v, const std::vector<std::size_t>& u) const;

    bool operator==(const TwoSidedHypergraph&) const = default;

private:
    std::size_t offset(const std::vector<int>& sides, const std::vector<std::size_t>& idx) const;

    std::size_t d_ = 0, n_ = 0;
    std::vector<Value> w_;
};

// 3-uniform k-partite hypergraph given by its hyperedge set.
struct Hypergraph3 {
    std::size_t parts = 0, n = 0;
    // present[((pa * n + a) * N + (pb * n + b)) * N + (pc * n + c)], N = parts * n,
    // symmetric under permutation.
    std::vector<char> present;

    Hypergraph3() = default;
    Hypergraph3(std::size_t parts, std::size_t n);
    void add(std::size_t pa, std::size_t a, std::size_t pb, std::size_t b, std::size_t pc, std::size_t c);
    bool has(std::size_t pa, std::size_t a, std::size_t pb, std::size_t b, std::size_t pc, std::size_t c) const;
    std::size_t edge_count() const;

private:
    std::size_t key(std::size_t pa, std::size_t a, std::size_t pb, std::size_t b, std::size_t pc, std::size_t c) const;
};

// 2d-1 parts -> d pairs. Part i (1-based) copies into pair ((i-1) mod d)+1,
// side 0 for i <= d and side 1 otherwise; the side-1 set of pair d encodes
// the xor of the indices chosen in parts d+1..2d-1.
TwoSidedHypergraph clique_to_twosided(const WeightedCliqueInstance& g);

// A[i] = weight of the hyperedge with V_r[i_r - 1] for i_r > 0 and
// U_r[-i_r - 1] for i_r < 0; zero when some coordinate is zero.
CentralArray twosided_to_central(const TwoSidedHypergraph& h);

// 2d-2 parts: parts 0..d-2 are V_1..V_{d-1}, parts d-1..2d-3 are
// U_1..U_{d-1}. Weights lie in [-100 d^10, 100 d^10].
TwoSidedHypergraph hyperclique3_to_twosided_bounded(const Hypergraph3& g, std::size_t d);

Value reduction_penalty(std::size_t d, Value max_weight);  // 100 d^10 M

struct CliqueOptimum {
    Value weight = 0;
    std::vector<std::size_t> choice;
};
CliqueOptimum brute_max_weight_clique(const WeightedCliqueInstance& g);

struct HypercliqueOptimum {
    Value weight = 0;
    std::vector<std::size_t> v, u;
};
HypercliqueOptimum brute_twosided_hyperclique(const TwoSidedHypergraph& h);

struct Hyperclique3Result {
    bool exists = false;
    std::size_t best_triples = 0;  // most hyperedges among one vertex per part
};
Hyperclique3Result brute_hyperclique3(const Hypergraph3& g);

// Hypergraph text format: header "uniformity parts n", then one line per
// hyperedge "P<part>:<idx> ... weight" (0-based parts and indices).
struct HyperedgeLine {
    std::vector<std::pair<std::size_t, std::size_t>> vertices;
    Value weight = 0;
};
struct HypergraphFile {
    std::size_t uniformity = 0, parts = 0, n = 0;
    std::vector<HyperedgeLine> edges;
};
HypergraphFile parse_hypergraph(std::istream& in);
HypergraphFile read_hypergraph_file(const std::string& path);
void write_hypergraph(std::ostream& out, const HypergraphFile& f);

// Conversions. Two-sided hypergraphs use parts 0..d-1 for V_1..V_d and
// d..2d-1 for U_1..U_d.
WeightedCliqueInstance clique_from_file(const HypergraphFile& f);
HypergraphFile clique_to_file(const WeightedCliqueInstance& g);
TwoSidedHypergraph twosided_from_file(const HypergraphFile& f);
HypergraphFile twosided_to_file(const TwoSidedHypergraph& h);
Hypergraph3 hypergraph3_from_file(const HypergraphFile& f);
HypergraphFile hypergraph3_to_file(const Hypergraph3& g);

}  // namespace trop
