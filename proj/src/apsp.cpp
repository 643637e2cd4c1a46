#include "trop/apsp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <queue>

#include "trop/params.hpp"
#include "trop/support.hpp"

namespace trop {

namespace {

std::string describe_cycle(const std::vector<std::size_t>& cycle) {
    std::string s = "negative cycle:";
    for (std::size_t v : cycle) s += " " + std::to_string(v);
    if (!cycle.empty()) s += " " + std::to_string(cycle.front());
    return s;
}

struct PreparedGraph {
    std::vector<std::size_t> perm;
    IntMatrix weights;  // W[perm, perm]
    BlockCertificate cert;
};

PreparedGraph prepare(const GWCGraph& g) {
    PreparedGraph out;
    out.perm = cluster_permutation(g);
    out.weights = IntMatrix(g.n, g.n);
    for (std::size_t x = 0; x < g.n; ++x)
        for (std::size_t y = 0; y < g.n; ++y) out.weights(x, y) = g.weights(out.perm[x], out.perm[y]);
    out.cert = gwc_certificate(g, out.perm);
    return out;
}

IntMatrix prepared_minplus(const IntMatrix& a, const PreparedGraph& pg, const MinPlusConfig& config,
                           StructuredStats* stats) {
    const std::size_t n = pg.perm.size();
    IntMatrix a_perm(a.rows(), n);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t y = 0; y < n; ++y) a_perm(i, y) = a(i, pg.perm[y]);
    const IntMatrix c_perm = minplus_structured(a_perm, pg.weights, pg.cert, config, stats);
    IntMatrix c(a.rows(), n);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t y = 0; y < n; ++y) c(i, pg.perm[y]) = c_perm(i, y);
    return c;
}

void require_square(const IntMatrix& w, const char* who) {
    if (w.rows() != w.cols()) throw DimensionError(std::string(who) + ": weight matrix must be square");
    require_minplus_domain(w, who);
}

}  // namespace

NegativeCycleError::NegativeCycleError(std::vector<std::size_t> cycle)
    : InputError(describe_cycle(cycle)), cycle_(std::move(cycle)) {}

std::vector<std::size_t> GWCGraph::members(std::size_t cluster) const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < n; ++v)
        if (cluster_of[v] == cluster) out.push_back(v);
    return out;
}

Value GWCGraph::max_deviation() const {
    Value worst = 0;
    for (std::size_t ci = 0; ci < clusters; ++ci) {
        const auto vi = members(ci);
        for (std::size_t cj = 0; cj < clusters; ++cj) {
            const auto vj = members(cj);
            const auto& pp = p[ci * clusters + cj];
            const auto& qq = q[ci * clusters + cj];
            for (std::size_t a = 0; a < vi.size(); ++a)
                for (std::size_t b = 0; b < vj.size(); ++b) {
                    __int128 dot = 0;
                    for (std::size_t c = 0; c < dim; ++c)
                        dot += static_cast<__int128>(pp[a * dim + c]) * qq[b * dim + c];
                    __int128 dev = dot - weights(vi[a], vj[b]);
                    if (dev < 0) dev = -dev;
                    if (dev > kEntryCap) return kEntryCap + 1;
                    worst = std::max(worst, static_cast<Value>(dev));
                }
        }
    }
    return worst;
}

void GWCGraph::validate() const {
    if (n == 0) throw DimensionError("graph has no vertices");
    if (clusters == 0 || n % clusters != 0)
        throw PreconditionError("cluster count " + std::to_string(clusters) + " does not divide n = " +
                                std::to_string(n));
    if (dim == 0) throw PreconditionError("vector dimension must be positive");
    if (error_bound < 0) throw PreconditionError("negative error bound");
    if (cluster_of.size() != n) throw DimensionError("cluster assignment has the wrong length");
    std::vector<std::size_t> size(clusters, 0);
    for (std::size_t c : cluster_of) {
        if (c >= clusters) throw PreconditionError("cluster id out of range");
        ++size[c];
    }
    for (std::size_t s : size)
        if (s != n / clusters) throw PreconditionError("clusters must all have n / t vertices");
    if (weights.rows() != n || weights.cols() != n) throw DimensionError("weight matrix must be n x n");
    require_all_finite(weights, "graph weights");
    require_minplus_domain(weights, "graph weights");
    if (p.size() != clusters * clusters || q.size() != clusters * clusters)
        throw DimensionError("vector families missing for some cluster pair");
    for (std::size_t x = 0; x < p.size(); ++x)
        if (p[x].size() != (n / clusters) * dim || q[x].size() != (n / clusters) * dim)
            throw DimensionError("vector family has the wrong size");
    if (max_deviation() > error_bound)
        throw PreconditionError("weights deviate from p.q by more than W = " + std::to_string(error_bound));
}

GWCGraph generate_gwc(const GWCParams& params) {
    if (params.n == 0 || params.clusters == 0 || params.n % params.clusters != 0)
        throw PreconditionError("generate_gwc: clusters must divide n");
    if (params.dim == 0) throw PreconditionError("generate_gwc: dimension must be positive");
    if (params.error_bound < 0) throw PreconditionError("generate_gwc: negative W");
    SplitRng rng = SplitRng(params.seed).split("gwc");
    GWCGraph g;
    g.n = params.n;
    g.clusters = params.clusters;
    g.dim = params.dim;
    g.error_bound = params.error_bound;
    const std::size_t size = g.n / g.clusters;
    const Value w = params.error_bound;
    const Value spread = 8 * (w + 1);

    std::vector<std::size_t> order(g.n);
    for (std::size_t v = 0; v < g.n; ++v) order[v] = v;
    for (std::size_t v = g.n; v-- > 1;) std::swap(order[v], order[rng.below(v + 1)]);
    g.cluster_of.assign(g.n, 0);
    for (std::size_t x = 0; x < g.n; ++x) g.cluster_of[order[x]] = x / size;

    std::vector<Value> phi(g.n);
    for (auto& f : phi) f = rng.range(-spread, spread);

    g.p.assign(g.clusters * g.clusters, {});
    g.q.assign(g.clusters * g.clusters, {});
    std::vector<std::vector<std::size_t>> members(g.clusters);
    for (std::size_t v = 0; v < g.n; ++v) members[g.cluster_of[v]].push_back(v);
    for (std::size_t ci = 0; ci < g.clusters; ++ci) {
        for (std::size_t cj = 0; cj < g.clusters; ++cj) {
            const Value c = rng.range(w, 3 * w + 4);
            auto& pp = g.p[ci * g.clusters + cj];
            auto& qq = g.q[ci * g.clusters + cj];
            pp.assign(size * g.dim, 0);
            qq.assign(size * g.dim, 0);
            for (std::size_t a = 0; a < size; ++a) {
                Value* row = pp.data() + a * g.dim;
                if (g.dim == 1) {
                    row[0] = c + rng.range(0, spread);
                } else {
                    row[0] = phi[members[ci][a]] + c;
                    row[1] = 1;
                    for (std::size_t x = 2; x < g.dim; ++x) row[x] = rng.range(0, 3);
                }
            }
            for (std::size_t b = 0; b < size; ++b) {
                Value* row = qq.data() + b * g.dim;
                row[0] = 1;
                if (g.dim >= 2) row[1] = -phi[members[cj][b]];
                for (std::size_t x = 2; x < g.dim; ++x) row[x] = rng.range(0, 3);
            }
        }
    }

    g.weights = IntMatrix(g.n, g.n, 0);
    for (std::size_t ci = 0; ci < g.clusters; ++ci)
        for (std::size_t cj = 0; cj < g.clusters; ++cj) {
            const auto& pp = g.p[ci * g.clusters + cj];
            const auto& qq = g.q[ci * g.clusters + cj];
            for (std::size_t a = 0; a < size; ++a)
                for (std::size_t b = 0; b < size; ++b) {
                    Value dot = 0;
                    for (std::size_t x = 0; x < g.dim; ++x) dot += pp[a * g.dim + x] * qq[b * g.dim + x];
                    g.weights(members[ci][a], members[cj][b]) = dot + rng.range(-w, w);
                }
        }
    return g;
}

std::vector<std::size_t> cluster_permutation(const GWCGraph& g) {
    std::vector<std::size_t> perm;
    perm.reserve(g.n);
    for (std::size_t c = 0; c < g.clusters; ++c)
        for (std::size_t v : g.members(c)) perm.push_back(v);
    return perm;
}

BlockCertificate gwc_certificate(const GWCGraph& g, const std::vector<std::size_t>& perm) {
    const std::size_t size = g.n / g.clusters;
    BlockCertificate cert(g.n, g.n, size, g.dim);
    for (std::size_t ci = 0; ci < g.clusters; ++ci)
        for (std::size_t cj = 0; cj < g.clusters; ++cj) {
            const auto& pp = g.p[ci * g.clusters + cj];
            const auto& qq = g.q[ci * g.clusters + cj];
            const std::size_t k0 = ci * size, j0 = cj * size;
            for (std::size_t a = 0; a < size; ++a) {
                auto x = cert.x_mut(k0 + a, j0);
                std::copy(pp.begin() + static_cast<long>(a * g.dim), pp.begin() + static_cast<long>((a + 1) * g.dim),
                          x.begin());
                auto y = cert.y_mut(k0, j0 + a);
                std::copy(qq.begin() + static_cast<long>(a * g.dim), qq.begin() + static_cast<long>((a + 1) * g.dim),
                          y.begin());
            }
        }
    IntMatrix permuted(g.n, g.n);
    for (std::size_t x = 0; x < g.n; ++x)
        for (std::size_t y = 0; y < g.n; ++y) permuted(x, y) = g.weights(perm[x], perm[y]);
    tighten_error_bound(permuted, cert);
    return cert;
}

IntMatrix gwc_minplus(const IntMatrix& a, const GWCGraph& g, const MinPlusConfig& config, StructuredStats* stats) {
    g.validate();
    if (a.cols() != g.n) throw DimensionError("gwc_minplus: A must have n columns");
    return prepared_minplus(a, prepare(g), config, stats);
}

std::vector<Value> johnson_potentials(const IntMatrix& weights) {
    require_square(weights, "johnson_potentials");
    const std::size_t n = weights.rows();
    std::vector<Value> h(n, 0);
    std::vector<std::size_t> parent(n, n);
    for (std::size_t round = 0; round <= n; ++round) {
        std::size_t last = n;
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v) {
                const Value w = weights(u, v);
                if (w == kInf) continue;
                if (h[u] + w < h[v]) {
                    h[v] = h[u] + w;
                    parent[v] = u;
                    last = v;
                }
            }
        if (last == n) return h;
        if (round == n) {
            std::size_t x = last;
            for (std::size_t s = 0; s < n; ++s) x = parent[x];
            std::vector<std::size_t> cycle{x};
            for (std::size_t y = parent[x]; y != x; y = parent[y]) cycle.push_back(y);
            std::reverse(cycle.begin(), cycle.end());
            throw NegativeCycleError(std::move(cycle));
        }
    }
    return h;
}

IntMatrix apsp_floyd_warshall(const IntMatrix& weights) {
    require_square(weights, "apsp_floyd_warshall");
    const std::size_t n = weights.rows();
    IntMatrix d = weights;
    for (std::size_t v = 0; v < n; ++v) d(v, v) = std::min<Value>(d(v, v), 0);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            const Value dik = d(i, k);
            if (dik == kInf) continue;
            for (std::size_t j = 0; j < n; ++j) {
                const Value dkj = d(k, j);
                if (dkj != kInf && dik + dkj < d(i, j)) d(i, j) = dik + dkj;
            }
        }
    for (std::size_t v = 0; v < n; ++v)
        if (d(v, v) < 0) johnson_potentials(weights);
    return d;
}

std::vector<std::size_t> sample_vertices(std::size_t n, std::size_t ell, std::uint64_t seed) {
    if (n == 0) return {};
    ell = std::max<std::size_t>(ell, 1);
    const double want = std::ceil(4.0 * static_cast<double>(n) / static_cast<double>(ell) *
                                  std::log(static_cast<double>(std::max<std::size_t>(n, 2))));
    std::vector<std::size_t> out;
    if (want >= static_cast<double>(n)) {
        for (std::size_t v = 0; v < n; ++v) out.push_back(v);
        return out;
    }
    SplitRng rng = SplitRng(seed).split("apsp-sample");
    for (std::size_t s = 0; s < static_cast<std::size_t>(want); ++s) out.push_back(static_cast<std::size_t>(rng.below(n)));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

IntMatrix sampled_sssp_pass(const IntMatrix& weights, const std::vector<std::size_t>& sources) {
    const std::vector<Value> h = johnson_potentials(weights);
    const std::size_t n = weights.rows();
    for (std::size_t s : sources)
        if (s >= n) throw DimensionError("sampled_sssp_pass: source out of range");

    // Reduced weights w(u,v) + h(u) - h(v) >= 0.
    auto dijkstra = [&](std::size_t source, bool reverse) {
        std::vector<Value> dist(n, kInf);
        using Item = std::pair<Value, std::size_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
        dist[source] = 0;
        heap.push({0, source});
        while (!heap.empty()) {
            auto [d, u] = heap.top();
            heap.pop();
            if (d != dist[u]) continue;
            for (std::size_t v = 0; v < n; ++v) {
                const Value w = reverse ? weights(v, u) : weights(u, v);
                if (w == kInf) continue;
                const Value reduced = reverse ? w + h[v] - h[u] : w + h[u] - h[v];
                if (d + reduced < dist[v]) {
                    dist[v] = d + reduced;
                    heap.push({dist[v], v});
                }
            }
        }
        // Undo the reweighting.
        for (std::size_t v = 0; v < n; ++v) {
            if (dist[v] == kInf) continue;
            dist[v] = reverse ? dist[v] - h[v] + h[source] : dist[v] - h[source] + h[v];
        }
        return dist;
    };

    IntMatrix out(n, n, kInf);
    for (std::size_t s : sources) {
        const auto from = dijkstra(s, false);  // d(s, v)
        const auto to = dijkstra(s, true);     // d(u, s)
        for (std::size_t u = 0; u < n; ++u) {
            if (to[u] == kInf) continue;
            for (std::size_t v = 0; v < n; ++v)
                if (from[v] != kInf) out(u, v) = std::min(out(u, v), to[u] + from[v]);
        }
    }
    return out;
}

IntMatrix apsp_gwc(const GWCGraph& g, const ApspOptions& options, ApspStats* stats) {
    g.validate();
    ApspStats local;
    const std::size_t n = g.n;
    local.ell = options.ell.value_or(
        params::apsp_path_threshold(n, g.clusters, g.dim, g.error_bound, options.structured.omega_eff));
    if (local.ell < 2) throw PreconditionError("apsp_gwc: path threshold must be at least 2");
    local.ell = std::min(local.ell, std::max<std::size_t>(n, 2));

    johnson_potentials(g.weights);
    const PreparedGraph pg = prepare(g);

    // Paths with at most one edge, then one more edge per product.
    IntMatrix d = g.weights;
    for (std::size_t v = 0; v < n; ++v) d(v, v) = std::min<Value>(d(v, v), 0);
    for (std::size_t step = 1; step < local.ell; ++step) {
        IntMatrix next = entrywise_min(d, prepared_minplus(d, pg, options.structured, nullptr));
        ++local.products;
        if (next == d) {
            local.reached_fixpoint = true;
            break;
        }
        d = std::move(next);
    }

    const auto sources = sample_vertices(n, local.ell, options.structured.seed);
    local.samples = sources.size();
    d = entrywise_min(d, sampled_sssp_pass(g.weights, sources));
    if (stats) *stats = local;
    return d;
}

GWCGraph parse_gwc(std::istream& in) {
    LineReader reader(in);
    auto header = reader.expect("graph header");
    if (header.size() != 4) throw ParseError(reader.line(), "expected header \"n t d W\"");
    GWCGraph g;
    g.n = parse_count(header[0], reader.line());
    g.clusters = parse_count(header[1], reader.line());
    g.dim = parse_count(header[2], reader.line());
    g.error_bound = parse_value(header[3], reader.line());
    if (g.n == 0 || g.clusters == 0 || g.n % g.clusters != 0)
        throw ParseError(reader.line(), "cluster count must divide n (equal cluster sizes)");
    if (g.dim == 0 || g.dim > 15) throw ParseError(reader.line(), "vector dimension must be in 1..15");
    if (g.error_bound < 0 || g.error_bound == kInf) throw ParseError(reader.line(), "W must be a nonnegative integer");

    auto ids = reader.expect("cluster ids");
    if (ids.size() != g.n) throw ParseError(reader.line(), "expected " + std::to_string(g.n) + " cluster ids");
    std::vector<std::size_t> size(g.clusters, 0);
    for (const auto& tok : ids) {
        const std::size_t c = parse_count(tok, reader.line());
        if (c >= g.clusters) throw ParseError(reader.line(), "cluster id " + tok + " out of range");
        g.cluster_of.push_back(c);
        ++size[c];
    }
    for (std::size_t s : size)
        if (s != g.n / g.clusters) throw ParseError(reader.line(), "clusters must all have n / t vertices");

    g.weights = IntMatrix(g.n, g.n);
    for (std::size_t v = 0; v < g.n; ++v) {
        auto row = reader.expect("weight row");
        if (row.size() != g.n) throw ParseError(reader.line(), "expected " + std::to_string(g.n) + " weights");
        for (std::size_t u = 0; u < g.n; ++u) {
            g.weights(v, u) = parse_value(row[u], reader.line());
            if (!is_finite(g.weights(v, u))) throw ParseError(reader.line(), "weights must be finite");
        }
    }

    const std::size_t csize = g.n / g.clusters;
    g.p.assign(g.clusters * g.clusters, {});
    g.q.assign(g.clusters * g.clusters, {});
    std::vector<char> seen_p(g.clusters * g.clusters, 0), seen_q(g.clusters * g.clusters, 0);
    for (std::size_t blockno = 0; blockno < 2 * g.clusters * g.clusters; ++blockno) {
        auto tag = reader.expect("P/Q block header");
        if (tag.size() != 3 || (tag[0] != "P" && tag[0] != "Q"))
            throw ParseError(reader.line(), "expected \"P i j\" or \"Q i j\"");
        const std::size_t ci = parse_count(tag[1], reader.line()), cj = parse_count(tag[2], reader.line());
        if (ci >= g.clusters || cj >= g.clusters) throw ParseError(reader.line(), "cluster index out of range");
        auto& seen = tag[0] == "P" ? seen_p : seen_q;
        if (seen[ci * g.clusters + cj]) throw ParseError(reader.line(), "duplicate " + tag[0] + " block");
        seen[ci * g.clusters + cj] = 1;
        auto& family = tag[0] == "P" ? g.p[ci * g.clusters + cj] : g.q[ci * g.clusters + cj];
        for (std::size_t a = 0; a < csize; ++a) {
            auto vec = reader.expect("vector");
            if (vec.size() != g.dim) throw ParseError(reader.line(), "expected " + std::to_string(g.dim) + " coordinates");
            for (const auto& tok : vec) family.push_back(parse_int(tok, reader.line()));
        }
    }
    std::vector<std::string> extra;
    if (reader.next(extra)) throw ParseError(reader.line(), "unexpected trailing data");
    g.validate();
    return g;
}

GWCGraph read_gwc_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return parse_gwc(in);
}

void write_gwc(std::ostream& out, const GWCGraph& g) {
    out << g.n << ' ' << g.clusters << ' ' << g.dim << ' ' << g.error_bound << '\n';
    for (std::size_t v = 0; v < g.n; ++v) out << (v ? " " : "") << g.cluster_of[v];
    out << '\n';
    for (std::size_t v = 0; v < g.n; ++v)
        for (std::size_t u = 0; u < g.n; ++u) out << g.weights(v, u) << (u + 1 == g.n ? '\n' : ' ');
    const std::size_t csize = g.n / g.clusters;
    for (int family = 0; family < 2; ++family)
        for (std::size_t ci = 0; ci < g.clusters; ++ci)
            for (std::size_t cj = 0; cj < g.clusters; ++cj) {
                out << (family == 0 ? "P " : "Q ") << ci << ' ' << cj << '\n';
                const auto& vecs = family == 0 ? g.p[ci * g.clusters + cj] : g.q[ci * g.clusters + cj];
                for (std::size_t a = 0; a < csize; ++a)
                    for (std::size_t x = 0; x < g.dim; ++x)
                        out << vecs[a * g.dim + x] << (x + 1 == g.dim ? '\n' : ' ');
            }
}

}  // namespace trop
