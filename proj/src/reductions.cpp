#include "trop/reductions.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <ostream>
#include <sstream>

namespace trop {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void require_power_of_two(std::size_t n, const char* what) {
    if (!is_power_of_two(n)) throw PreconditionError(std::string(what) + ": n must be a power of 2");
}

// Visits every vector in [0, n)^len in lexicographic order.
template <typename F>
void for_each_tuple(std::size_t len, std::size_t n, F&& f) {
    std::vector<std::size_t> t(len, 0);
    while (true) {
        f(t);
        std::size_t r = len;
        while (r > 0) {
            --r;
            if (++t[r] < n) break;
            t[r] = 0;
            if (r == 0) return;
        }
        if (len == 0) return;
    }
}

Value checked_mul(Value a, Value b) {
    Value out;
    if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("reduction penalty overflows 64 bits");
    return out;
}

}  // namespace

WeightedCliqueInstance::WeightedCliqueInstance(std::size_t parts_, std::size_t n_)
    : parts(parts_), n(n_), weights(parts_ * parts_) {
    for (std::size_t i = 0; i < parts; ++i)
        for (std::size_t j = i + 1; j < parts; ++j) weights[i * parts + j] = IntMatrix(n, n, 0);
}

Value& WeightedCliqueInstance::weight(std::size_t i, std::size_t a, std::size_t j, std::size_t b) {
    if (i > j) {
        std::swap(i, j);
        std::swap(a, b);
    }
    if (i == j || j >= parts) throw DimensionError("clique edge between invalid parts");
    return weights[i * parts + j](a, b);
}

Value WeightedCliqueInstance::weight(std::size_t i, std::size_t a, std::size_t j, std::size_t b) const {
    return const_cast<WeightedCliqueInstance&>(*this).weight(i, a, j, b);
}

Value WeightedCliqueInstance::max_abs_weight() const {
    Value m = 0;
    for (const auto& w : weights)
        for (Value v : w.values()) m = std::max(m, v < 0 ? -v : v);
    return m;
}

TwoSidedHypergraph::TwoSidedHypergraph(std::size_t d, std::size_t n) : d_(d), n_(n) {
    if (d == 0 || n == 0) throw DimensionError("two-sided hypergraph needs d >= 1 and n >= 1");
    std::size_t size = 1;
    for (std::size_t r = 0; r < d; ++r) {
        if (size > (std::size_t{1} << 28) / (2 * n)) throw DimensionError("two-sided hypergraph too large");
        size *= 2 * n;
    }
    w_.assign(size, 0);
}

std::size_t TwoSidedHypergraph::offset(const std::vector<int>& sides, const std::vector<std::size_t>& idx) const {
    if (sides.size() != d_ || idx.size() != d_) throw DimensionError("hyperedge arity mismatch");
    std::size_t off = 0;
    for (std::size_t r = 0; r < d_; ++r) {
        if ((sides[r] != 0 && sides[r] != 1) || idx[r] >= n_) throw DimensionError("hyperedge vertex out of range");
        off = off * 2 * n_ + static_cast<std::size_t>(sides[r]) * n_ + idx[r];
    }
    return off;
}

Value TwoSidedHypergraph::max_abs_weight() const {
    Value m = 0;
    for (Value v : w_) m = std::max(m, v < 0 ? -v : v);
    return m;
}

Value TwoSidedHypergraph::clique_weight(const std::vector<std::size_t>& v, const std::vector<std::size_t>& u) const {
    Value total = 0;
    std::vector<int> sides(d_);
    std::vector<std::size_t> idx(d_);
    for (std::size_t mask = 0; mask < (std::size_t{1} << d_); ++mask) {
        for (std::size_t r = 0; r < d_; ++r) {
            sides[r] = static_cast<int>((mask >> r) & 1);
            idx[r] = sides[r] == 0 ? v[r] : u[r];
        }
        total += weight(sides, idx);
    }
    return total;
}

Hypergraph3::Hypergraph3(std::size_t parts_, std::size_t n_) : parts(parts_), n(n_) {
    std::size_t big = parts * n;
    if (big > 512) throw DimensionError("3-uniform hypergraph too large for the dense representation");
    present.assign(big * big * big, 0);
}

std::size_t Hypergraph3::key(std::size_t pa, std::size_t a, std::size_t pb, std::size_t b, std::size_t pc,
                             std::size_t c) const {
    if (pa >= parts || pb >= parts || pc >= parts || a >= n || b >= n || c >= n)
        throw DimensionError("hyperedge vertex out of range");
    std::size_t big = parts * n;
    return ((pa * n + a) * big + (pb * n + b)) * big + (pc * n + c);
}

void Hypergraph3::add(std::size_t pa, std::size_t a, std::size_t pb, std::size_t b, std::size_t pc, std::size_t c) {
    if (pa == pb || pb == pc || pa == pc) throw DimensionError("3-uniform hyperedge must span three parts");
    std::array<std::pair<std::size_t, std::size_t>, 3> v{{{pa, a}, {pb, b}, {pc, c}}};
    std::sort(v.begin(), v.end());
    do {
        present[key(v[0].first, v[0].second, v[1].first, v[1].second, v[2].first, v[2].second)] = 1;
    } while (std::next_permutation(v.begin(), v.end()));
}

bool Hypergraph3::has(std::size_t pa, std::size_t a, std::size_t pb, std::size_t b, std::size_t pc,
                      std::size_t c) const {
    return present[key(pa, a, pb, b, pc, c)] != 0;
}

std::size_t Hypergraph3::edge_count() const {
    std::size_t count = 0;
    for (std::size_t pa = 0; pa < parts; ++pa)
        for (std::size_t pb = pa + 1; pb < parts; ++pb)
            for (std::size_t pc = pb + 1; pc < parts; ++pc)
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = 0; b < n; ++b)
                        for (std::size_t c = 0; c < n; ++c) count += has(pa, a, pb, b, pc, c) ? 1 : 0;
    return count;
}

Value reduction_penalty(std::size_t d, Value max_weight) {
    Value p = 100;
    for (int e = 0; e < 10; ++e) p = checked_mul(p, static_cast<Value>(d));
    return checked_mul(p, max_weight);
}

TwoSidedHypergraph clique_to_twosided(const WeightedCliqueInstance& g) {
    if (g.parts < 3 || g.parts % 2 == 0) throw DimensionError("clique_to_twosided needs 2d-1 parts with d >= 2");
    require_power_of_two(g.n, "clique_to_twosided");
    const std::size_t d = (g.parts + 1) / 2, n = g.n;
    TwoSidedHypergraph h(d, n);
    const Value penalty = reduction_penalty(d, g.max_abs_weight());
    if (penalty > kEntryCap) throw OverflowError("clique_to_twosided penalty exceeds the entry cap");

    // Part p (0-based, p < 2d-1) lives in pair p mod d, side p >= d.
    auto pair_of = [d](std::size_t p) { return p % d; };
    auto side_of = [d](std::size_t p) { return p >= d ? 1 : 0; };

    std::vector<int> sides(d);
    std::vector<std::size_t> idx(d);
    for (std::size_t i = 0; i < g.parts; ++i) {
        for (std::size_t j = i + 1; j < g.parts; ++j) {
            const IntMatrix& w = g.weights[i * g.parts + j];
            if (j != i + d) {
                std::vector<std::size_t> rest;
                for (std::size_t k = 0; k < d; ++k)
                    if (k != pair_of(i) && k != pair_of(j)) rest.push_back(k);
                std::fill(sides.begin(), sides.end(), 0);
                sides[pair_of(i)] = side_of(i);
                sides[pair_of(j)] = side_of(j);
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = 0; b < n; ++b) {
                        if (w(a, b) == 0) continue;
                        idx[pair_of(i)] = a;
                        idx[pair_of(j)] = b;
                        for_each_tuple(rest.size(), n, [&](const std::vector<std::size_t>& t) {
                            for (std::size_t q = 0; q < rest.size(); ++q) idx[rest[q]] = t[q];
                            h.weight(sides, idx) += w(a, b);
                        });
                    }
            } else {
                // Part i in the first half, its partner j = i + d in the second;
                // the other second-half pairs are free except pair d-1, whose
                // index is the xor of parts d..2d-2.
                const std::size_t pi = pair_of(i);
                std::vector<std::size_t> free;
                for (std::size_t k = 0; k + 1 < d; ++k)
                    if (k != pi) free.push_back(k);
                std::fill(sides.begin(), sides.end(), 1);
                sides[pi] = 0;
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = 0; b < n; ++b) {
                        if (w(a, b) == 0) continue;
                        idx[pi] = a;
                        for_each_tuple(free.size(), n, [&](const std::vector<std::size_t>& t) {
                            std::size_t x = b;
                            for (std::size_t q = 0; q < free.size(); ++q) {
                                idx[free[q]] = t[q];
                                x ^= t[q];
                            }
                            idx[d - 1] = x;
                            h.weight(sides, idx) += w(a, b);
                        });
                    }
            }
        }
    }

    std::fill(sides.begin(), sides.end(), 1);
    for_each_tuple(d, n, [&](const std::vector<std::size_t>& t) {
        std::size_t x = 0;
        for (std::size_t k = 0; k + 1 < d; ++k) x ^= t[k];
        if (x != t[d - 1]) h.weight(sides, t) = -penalty;
    });
    return h;
}

CentralArray twosided_to_central(const TwoSidedHypergraph& h) {
    const std::size_t d = h.d(), n = h.n();
    CentralArray c(d, n, 0);
    std::vector<int> sides(d);
    std::vector<std::size_t> idx(d);
    std::vector<long> pos(d);
    // Every coordinate nonzero: 2n choices per axis.
    for_each_tuple(d, 2 * n, [&](const std::vector<std::size_t>& t) {
        for (std::size_t r = 0; r < d; ++r) {
            sides[r] = t[r] < n ? 0 : 1;
            idx[r] = t[r] % n;
            pos[r] = sides[r] == 0 ? static_cast<long>(idx[r]) + 1 : -static_cast<long>(idx[r]) - 1;
        }
        c.at(pos) = h.weight(sides, idx);
    });
    return c;
}

TwoSidedHypergraph hyperclique3_to_twosided_bounded(const Hypergraph3& g, std::size_t d) {
    if (d < 3) throw PreconditionError("hyperclique3_to_twosided_bounded needs d >= 3");
    if (g.parts != 2 * d - 2) throw DimensionError("hyperclique3_to_twosided_bounded needs 2d-2 parts");
    require_power_of_two(g.n, "hyperclique3_to_twosided_bounded");
    const std::size_t n = g.n;
    TwoSidedHypergraph h(d, n);
    const Value penalty = reduction_penalty(d, 1);

    // Part p maps to pair p mod (d-1); parts 0..d-2 are V (side 0).
    auto pair_of = [d](std::size_t p) { return p % (d - 1); };
    auto side_of = [d](std::size_t p) { return p >= d - 1 ? 1 : 0; };

    std::vector<int> sides(d);
    std::vector<std::size_t> idx(d);
    for (std::size_t pa = 0; pa < g.parts; ++pa)
        for (std::size_t pb = pa + 1; pb < g.parts; ++pb)
            for (std::size_t pc = pb + 1; pc < g.parts; ++pc)
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = 0; b < n; ++b)
                        for (std::size_t c = 0; c < n; ++c) {
                            if (!g.has(pa, a, pb, b, pc, c)) continue;
                            std::array<std::pair<std::size_t, std::size_t>, 3> v{{{pa, a}, {pb, b}, {pc, c}}};
                            // Find a corresponding pair (same pair index).
                            int x = -1, y = -1, z = -1;
                            for (int s = 0; s < 3 && x < 0; ++s)
                                for (int t = s + 1; t < 3; ++t)
                                    if (pair_of(v[s].first) == pair_of(v[t].first)) {
                                        x = s;
                                        y = t;
                                        z = 3 - s - t;
                                        break;
                                    }
                            if (x < 0) {
                                std::fill(sides.begin(), sides.end(), 0);
                                std::vector<bool> fixed(d, false);
                                for (const auto& [p, i] : v) {
                                    sides[pair_of(p)] = side_of(p);
                                    idx[pair_of(p)] = i;
                                    fixed[pair_of(p)] = true;
                                }
                                std::vector<std::size_t> rest;
                                for (std::size_t k = 0; k < d; ++k)
                                    if (!fixed[k]) rest.push_back(k);
                                for_each_tuple(rest.size(), n, [&](const std::vector<std::size_t>& t) {
                                    for (std::size_t q = 0; q < rest.size(); ++q) idx[rest[q]] = t[q];
                                    h.weight(sides, idx) += 1;
                                });
                                continue;
                            }
                            // The corresponding pair sits on both sides of pair i;
                            // the third vertex decides which side every other pair uses.
                            const auto va = side_of(v[x].first) == 0 ? v[x] : v[y];
                            const auto ub = side_of(v[x].first) == 0 ? v[y] : v[x];
                            const auto third = v[z];
                            const std::size_t pi = pair_of(va.first);
                            const int other = side_of(third.first);
                            // other == 0: pair i takes ub, the xor of the others names va.
                            const auto kept = other == 0 ? ub : va;
                            const std::size_t named = other == 0 ? va.second : ub.second;
                            std::fill(sides.begin(), sides.end(), other);
                            sides[pi] = 1 - other;
                            idx[pi] = kept.second;
                            const std::size_t pj = pair_of(third.first);
                            idx[pj] = third.second;
                            std::vector<std::size_t> free;
                            for (std::size_t k = 0; k + 1 < d; ++k)
                                if (k != pi && k != pj) free.push_back(k);
                            for_each_tuple(free.size(), n, [&](const std::vector<std::size_t>& t) {
                                std::size_t acc = named ^ third.second;
                                for (std::size_t q = 0; q < free.size(); ++q) {
                                    idx[free[q]] = t[q];
                                    acc ^= t[q];
                                }
                                idx[d - 1] = acc;
                                h.weight(sides, idx) += 1;
                            });
                        }

    for (int side = 0; side < 2; ++side) {
        std::vector<int> all(d, side);
        for_each_tuple(d, n, [&](const std::vector<std::size_t>& t) {
            std::size_t x = 0;
            for (std::size_t k = 0; k + 1 < d; ++k) x ^= t[k];
            if (x != t[d - 1]) h.weight(all, t) = -penalty;
        });
    }
    return h;
}

CliqueOptimum brute_max_weight_clique(const WeightedCliqueInstance& g) {
    CliqueOptimum best;
    bool first = true;
    for_each_tuple(g.parts, g.n, [&](const std::vector<std::size_t>& t) {
        Value total = 0;
        for (std::size_t i = 0; i < g.parts; ++i)
            for (std::size_t j = i + 1; j < g.parts; ++j) total += g.weights[i * g.parts + j](t[i], t[j]);
        if (first || total > best.weight) {
            best.weight = total;
            best.choice = t;
            first = false;
        }
    });
    return best;
}

HypercliqueOptimum brute_twosided_hyperclique(const TwoSidedHypergraph& h) {
    const std::size_t d = h.d();
    HypercliqueOptimum best;
    bool first = true;
    std::vector<std::size_t> v(d), u(d);
    for_each_tuple(2 * d, h.n(), [&](const std::vector<std::size_t>& t) {
        std::copy(t.begin(), t.begin() + static_cast<long>(d), v.begin());
        std::copy(t.begin() + static_cast<long>(d), t.end(), u.begin());
        Value total = h.clique_weight(v, u);
        if (first || total > best.weight) {
            best.weight = total;
            best.v = v;
            best.u = u;
            first = false;
        }
    });
    return best;
}

Hyperclique3Result brute_hyperclique3(const Hypergraph3& g) {
    Hyperclique3Result out;
    const std::size_t k = g.parts;
    const std::size_t needed = k < 3 ? 0 : k * (k - 1) * (k - 2) / 6;
    for_each_tuple(k, g.n, [&](const std::vector<std::size_t>& t) {
        std::size_t count = 0;
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = a + 1; b < k; ++b)
                for (std::size_t c = b + 1; c < k; ++c) count += g.has(a, t[a], b, t[b], c, t[c]) ? 1 : 0;
        out.best_triples = std::max(out.best_triples, count);
    });
    out.exists = out.best_triples == needed;
    return out;
}

HypergraphFile parse_hypergraph(std::istream& in) {
    LineReader reader(in);
    auto header = reader.expect("hypergraph header");
    if (header.size() != 3) throw ParseError(reader.line(), "expected \"uniformity parts n\"");
    HypergraphFile f;
    f.uniformity = parse_count(header[0], reader.line());
    f.parts = parse_count(header[1], reader.line());
    f.n = parse_count(header[2], reader.line());
    if (f.uniformity == 0 || f.parts == 0 || f.n == 0) throw ParseError(reader.line(), "sizes must be positive");
    if (f.uniformity > f.parts) throw ParseError(reader.line(), "uniformity exceeds the number of parts");
    std::vector<std::string> tokens;
    while (reader.next(tokens)) {
        if (tokens.size() != f.uniformity + 1)
            throw ParseError(reader.line(), "expected " + std::to_string(f.uniformity) + " vertices and a weight");
        HyperedgeLine e;
        for (std::size_t q = 0; q < f.uniformity; ++q) {
            const std::string& tok = tokens[q];
            auto colon = tok.find(':');
            if (tok.size() < 4 || tok[0] != 'P' || colon == std::string::npos)
                throw ParseError(reader.line(), "vertex token must look like P<part>:<idx>, got '" + tok + "'");
            std::size_t part = parse_count(tok.substr(1, colon - 1), reader.line());
            std::size_t i = parse_count(tok.substr(colon + 1), reader.line());
            if (part >= f.parts || i >= f.n) throw ParseError(reader.line(), "vertex " + tok + " out of range");
            e.vertices.emplace_back(part, i);
        }
        e.weight = parse_int(tokens.back(), reader.line());
        f.edges.push_back(std::move(e));
    }
    return f;
}

HypergraphFile read_hypergraph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return parse_hypergraph(in);
}

void write_hypergraph(std::ostream& out, const HypergraphFile& f) {
    out << f.uniformity << ' ' << f.parts << ' ' << f.n << '\n';
    for (const auto& e : f.edges) {
        for (const auto& [p, i] : e.vertices) out << 'P' << p << ':' << i << ' ';
        out << e.weight << '\n';
    }
}

WeightedCliqueInstance clique_from_file(const HypergraphFile& f) {
    if (f.uniformity != 2) throw DimensionError("clique instance needs uniformity 2");
    WeightedCliqueInstance g(f.parts, f.n);
    for (const auto& e : f.edges) {
        if (e.vertices[0].first == e.vertices[1].first) throw DimensionError("clique edge inside one part");
        g.weight(e.vertices[0].first, e.vertices[0].second, e.vertices[1].first, e.vertices[1].second) += e.weight;
    }
    return g;
}

HypergraphFile clique_to_file(const WeightedCliqueInstance& g) {
    HypergraphFile f{2, g.parts, g.n, {}};
    for (std::size_t i = 0; i < g.parts; ++i)
        for (std::size_t j = i + 1; j < g.parts; ++j)
            for (std::size_t a = 0; a < g.n; ++a)
                for (std::size_t b = 0; b < g.n; ++b) {
                    Value w = g.weights[i * g.parts + j](a, b);
                    if (w != 0) f.edges.push_back({{{i, a}, {j, b}}, w});
                }
    return f;
}

TwoSidedHypergraph twosided_from_file(const HypergraphFile& f) {
    if (f.parts != 2 * f.uniformity) throw DimensionError("two-sided hypergraph needs 2d parts");
    const std::size_t d = f.uniformity;
    TwoSidedHypergraph h(d, f.n);
    std::vector<int> sides(d);
    std::vector<std::size_t> idx(d);
    for (const auto& e : f.edges) {
        std::vector<bool> seen(d, false);
        for (const auto& [p, i] : e.vertices) {
            std::size_t r = p % d;
            if (seen[r]) throw DimensionError("two-sided hyperedge must take one vertex per pair");
            seen[r] = true;
            sides[r] = p < d ? 0 : 1;
            idx[r] = i;
        }
        h.weight(sides, idx) += e.weight;
    }
    return h;
}

HypergraphFile twosided_to_file(const TwoSidedHypergraph& h) {
    const std::size_t d = h.d(), n = h.n();
    HypergraphFile f{d, 2 * d, n, {}};
    std::vector<int> sides(d);
    std::vector<std::size_t> idx(d);
    for_each_tuple(d, 2 * n, [&](const std::vector<std::size_t>& t) {
        HyperedgeLine e;
        for (std::size_t r = 0; r < d; ++r) {
            sides[r] = t[r] < n ? 0 : 1;
            idx[r] = t[r] % n;
            e.vertices.emplace_back(r + static_cast<std::size_t>(sides[r]) * d, idx[r]);
        }
        e.weight = h.weight(sides, idx);
        if (e.weight != 0) f.edges.push_back(std::move(e));
    });
    return f;
}

Hypergraph3 hypergraph3_from_file(const HypergraphFile& f) {
    if (f.uniformity != 3) throw DimensionError("expected a 3-uniform hypergraph");
    Hypergraph3 g(f.parts, f.n);
    for (const auto& e : f.edges) {
        if (e.weight == 0) continue;
        g.add(e.vertices[0].first, e.vertices[0].second, e.vertices[1].first, e.vertices[1].second,
              e.vertices[2].first, e.vertices[2].second);
    }
    return g;
}

HypergraphFile hypergraph3_to_file(const Hypergraph3& g) {
    HypergraphFile f{3, g.parts, g.n, {}};
    for (std::size_t pa = 0; pa < g.parts; ++pa)
        for (std::size_t pb = pa + 1; pb < g.parts; ++pb)
            for (std::size_t pc = pb + 1; pc < g.parts; ++pc)
                for (std::size_t a = 0; a < g.n; ++a)
                    for (std::size_t b = 0; b < g.n; ++b)
                        for (std::size_t c = 0; c < g.n; ++c)
                            if (g.has(pa, a, pb, b, pc, c)) f.edges.push_back({{{pa, a}, {pb, b}, {pc, c}}, 1});
    return f;
}

}  // namespace trop
