#include "trop/structured.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "trop/bucketed.hpp"
#include "trop/halfspace.hpp"
#include "trop/params.hpp"
#include "trop/support.hpp"

namespace trop {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// Points carry one leading coordinate plus the rank-length factor; rank-0
// certificates are padded so the point dimension is at least 2.
std::size_t point_dim(const BlockCertificate& cert) { return 1 + std::max<std::size_t>(cert.rank(), 1); }

void fill_point(std::vector<Value>& out, Value lead, std::span<const Value> factor) {
    out[0] = lead;
    std::fill(out.begin() + 1, out.end(), 0);
    std::copy(factor.begin(), factor.end(), out.begin() + 1);
}

void require_inputs(const IntMatrix& a, const IntMatrix& b, const BlockCertificate& cert, const char* who) {
    if (a.cols() != b.rows())
        throw DimensionError(std::string(who) + ": A has " + std::to_string(a.cols()) + " columns but B has " +
                             std::to_string(b.rows()) + " rows");
    require_minplus_domain(a, "A");
    require_all_finite(b, "B");
    require_minplus_domain(b, "B");
    if (cert.rows() != b.rows() || cert.cols() != b.cols())
        throw DimensionError(std::string(who) + ": certificate shape does not match B");
    if (!verify_certificate(b, cert).ok)
        throw PreconditionError(std::string(who) + ": certificate does not hold for B within its error bound");
}

void require_c_shape(const IntMatrix& c, const IntMatrix& a, const IntMatrix& b, const char* name) {
    if (c.rows() != a.rows() || c.cols() != b.cols())
        throw DimensionError(std::string(name) + " has the wrong shape");
}

std::size_t resolve_rho(const MinPlusConfig& config, const IntMatrix& a, const IntMatrix& b, Value w) {
    if (config.rho) return *config.rho;
    const std::size_t n = std::max({a.rows(), b.rows(), b.cols(), std::size_t{1}});
    return params::rho(n, w, config.omega_eff);
}

IntMatrix phase1_impl(const IntMatrix& a, const BlockCertificate& cert, const MinPlusConfig& config) {
    const std::size_t m = a.rows(), p = cert.cols(), dim = point_dim(cert);
    IntMatrix c_tilde(m, p, kInf);
    parallel_for(m, config.threads, [&](std::size_t begin, std::size_t end, std::size_t) {
        std::vector<Value> pt(dim), q(dim);
        PointSet points(dim);
        auto index = HalfspaceIndex::build(PointSet(dim));
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t kb = 0; kb < cert.row_blocks(); ++kb) {
                for (std::size_t jb = 0; jb < cert.col_blocks(); ++jb) {
                    const std::size_t j0 = cert.block_begin(jb);
                    points.clear();
                    for (std::size_t k = cert.block_begin(kb); k < cert.row_block_end(kb); ++k) {
                        if (a(i, k) == kInf) continue;
                        fill_point(pt, a(i, k), cert.x(k, j0));
                        points.add(pt, k);
                    }
                    if (points.empty()) continue;
                    index.rebuild(points);
                    for (std::size_t j = j0; j < cert.col_block_end(jb); ++j) {
                        fill_point(q, 1, cert.y(cert.block_begin(kb), j));
                        const Value v = config.phase1_binary_search ? index.min_dot_by_search(q) : index.min_dot(q);
                        c_tilde(i, j) = std::min(c_tilde(i, j), v);
                    }
                }
            }
        }
    });
    return c_tilde;
}

Phase2Result phase2_impl(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c_tilde, Value w,
                         const MinPlusConfig& config, const std::vector<std::size_t>& columns) {
    const std::size_t m = a.rows(), n = b.rows(), p = b.cols();
    const Value cap = config.cap_multiplier * w;
    const Value bound = std::max<Value>(1, cap);

    Phase2Result out;
    out.c_hat = IntMatrix(m, p, kInf);
    out.report.rows = m;
    out.report.inner = n;
    out.report.covered.assign(m * n, 0);
    out.report.sampled_columns = columns;
    if (columns.empty() || m == 0 || p == 0) return out;

    const std::size_t workers = std::clamp<std::size_t>(config.threads, 1, columns.size());
    std::vector<IntMatrix> partial(workers, IntMatrix(m, p, kInf));
    std::vector<std::vector<char>> covered(workers, std::vector<char>(m * n, 0));
    std::vector<std::size_t> scanned(workers, 0);
    BucketedOptions options;
    options.bucket_size = config.bucket_size;
    options.omega_eff = config.omega_eff;

    parallel_for(columns.size(), workers, [&](std::size_t begin, std::size_t end, std::size_t w_id) {
        IntMatrix& c_hat = partial[w_id];
        auto& cov = covered[w_id];
        IntMatrix ar(m, n, kInf), br(n, p, 0);
        for (std::size_t r = begin; r < end; ++r) {
            const std::size_t jr = columns[r];
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t k = 0; k < n; ++k) {
                    ar(i, k) = kInf;
                    if (a(i, k) == kInf || c_tilde(i, jr) == kInf) continue;
                    const Value v = a(i, k) + b(k, jr) - c_tilde(i, jr);
                    if (v > cap || v < -cap) continue;
                    ar(i, k) = v;
                    cov[i * n + k] = 1;
                }
            }
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t j = 0; j < p; ++j) br(k, j) = b(k, j) - b(k, jr);
            BucketedStats st;
            const IntMatrix cr = detail::minplus_one_bounded_unchecked(ar, br, bound, options, &st);
            scanned[w_id] += st.large_buckets_scanned;
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < p; ++j)
                    if (cr(i, j) != kInf) c_hat(i, j) = std::min(c_hat(i, j), cr(i, j) + c_tilde(i, jr));
        }
    });

    for (std::size_t w_id = 0; w_id < workers; ++w_id) {
        out.c_hat = entrywise_min(out.c_hat, partial[w_id]);
        for (std::size_t x = 0; x < m * n; ++x) out.report.covered[x] |= covered[w_id][x];
        out.large_buckets_scanned += scanned[w_id];
    }
    return out;
}

IntMatrix phase3_impl(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c_tilde, const IntMatrix& c_hat,
                      const RelevanceReport& report, const BlockCertificate& cert, const MinPlusConfig& config,
                      std::size_t* triples_listed) {
    const std::size_t m = a.rows(), dim = point_dim(cert);
    const Value w = cert.error_bound();
    IntMatrix c = c_hat;
    const std::size_t workers = std::clamp<std::size_t>(config.threads, 1, std::max<std::size_t>(m, 1));
    std::vector<std::size_t> listed(workers, 0);
    parallel_for(m, workers, [&](std::size_t begin, std::size_t end, std::size_t w_id) {
        std::vector<Value> pt(dim);
        Halfspace h{std::vector<Value>(dim), 0};
        PointSet points(dim);
        auto index = HalfspaceIndex::build(PointSet(dim));
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t kb = 0; kb < cert.row_blocks(); ++kb) {
                for (std::size_t jb = 0; jb < cert.col_blocks(); ++jb) {
                    const std::size_t j0 = cert.block_begin(jb);
                    points.clear();
                    for (std::size_t k = cert.block_begin(kb); k < cert.row_block_end(kb); ++k) {
                        if (a(i, k) == kInf || report.is_covered(i, k)) continue;
                        fill_point(pt, a(i, k), cert.x(k, j0));
                        points.add(pt, k);
                    }
                    if (points.empty()) continue;
                    index.rebuild(points);
                    for (std::size_t j = j0; j < cert.col_block_end(jb); ++j) {
                        if (c_tilde(i, j) == kInf) continue;
                        fill_point(h.normal, 1, cert.y(cert.block_begin(kb), j));
                        h.offset = 2 * w + c_tilde(i, j);
                        for (std::size_t k : index.report(h)) {
                            c(i, j) = std::min(c(i, j), a(i, k) + b(k, j));
                            ++listed[w_id];
                        }
                    }
                }
            }
        }
    });
    if (triples_listed) {
        *triples_listed = 0;
        for (std::size_t x : listed) *triples_listed += x;
    }
    return c;
}

ColumnSelection select_impl(const IntMatrix& a, const IntMatrix& c_tilde, const BlockCertificate& cert,
                            std::size_t rho) {
    const std::size_t m = a.rows(), n = cert.rows(), p = cert.cols(), dim = point_dim(cert);
    const Value w = cert.error_bound();
    ColumnSelection out;
    if (p == 0) return out;
    rho = std::max<std::size_t>(rho, 1);
    out.set_size = std::max<std::size_t>(1, (p + rho - 1) / rho);

    std::vector<Value> pt(dim);
    Halfspace h{std::vector<Value>(dim), 0};
    PointSet points(dim);
    auto index = HalfspaceIndex::build(PointSet(dim));
    std::vector<std::vector<std::size_t>> listed(n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t kb = 0; kb < cert.row_blocks(); ++kb) {
            const std::size_t k0 = cert.block_begin(kb), k1 = cert.row_block_end(kb);
            for (std::size_t k = k0; k < k1; ++k) listed[k].clear();
            for (std::size_t jb = 0; jb < cert.col_blocks(); ++jb) {
                const std::size_t j0 = cert.block_begin(jb);
                points.clear();
                for (std::size_t j = j0; j < cert.col_block_end(jb); ++j) {
                    if (c_tilde(i, j) == kInf) continue;
                    fill_point(pt, -c_tilde(i, j), cert.y(k0, j));
                    points.add(pt, j);
                }
                if (points.empty()) continue;
                index.rebuild(points);
                for (std::size_t k = k0; k < k1; ++k) {
                    if (a(i, k) == kInf || listed[k].size() >= out.set_size) continue;
                    fill_point(h.normal, 1, cert.x(k, j0));
                    h.offset = 4 * w - a(i, k);
                    auto found = index.report(h, out.set_size - listed[k].size());
                    listed[k].insert(listed[k].end(), found.begin(), found.end());
                }
            }
            for (std::size_t k = k0; k < k1; ++k)
                if (listed[k].size() >= out.set_size) out.sets.push_back(listed[k]);
        }
    }

    // Greedy hitting set: repeatedly take the column in the most unhit sets.
    std::vector<std::vector<std::size_t>> sets_of(p);
    for (std::size_t s = 0; s < out.sets.size(); ++s)
        for (std::size_t j : out.sets[s]) sets_of[j].push_back(s);
    std::vector<std::size_t> count(p);
    for (std::size_t j = 0; j < p; ++j) count[j] = sets_of[j].size();
    std::vector<char> hit(out.sets.size(), 0);
    std::size_t remaining = out.sets.size();
    while (remaining > 0) {
        const std::size_t best = static_cast<std::size_t>(std::max_element(count.begin(), count.end()) - count.begin());
        out.columns.push_back(best);
        for (std::size_t s : sets_of[best]) {
            if (hit[s]) continue;
            hit[s] = 1;
            --remaining;
            for (std::size_t j : out.sets[s]) --count[j];
        }
    }
    return out;
}

}  // namespace

void MinPlusConfig::validate() const {
    if (cap_multiplier != 3 && cap_multiplier != 5) throw PreconditionError("cap multiplier must be 3 or 5");
    if (rho && *rho == 0) throw PreconditionError("rho must be at least 1");
    if (threads == 0) throw PreconditionError("thread budget must be at least 1");
    if (bucket_size && *bucket_size == 0) throw PreconditionError("bucket size must be positive");
    if (!(omega_eff >= 2.0 && omega_eff <= 3.0)) throw PreconditionError("omega_eff must lie in [2, 3]");
}

IntMatrix phase1_approx(const IntMatrix& a, const IntMatrix& b, const BlockCertificate& cert,
                        const MinPlusConfig& config) {
    config.validate();
    require_inputs(a, b, cert, "phase1_approx");
    return phase1_impl(a, cert, config);
}

Phase2Result phase2_sample(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c_tilde, Value error_bound,
                           const MinPlusConfig& config, const std::optional<std::vector<std::size_t>>& columns) {
    config.validate();
    if (a.cols() != b.rows()) throw DimensionError("phase2_sample: inner dimensions differ");
    require_c_shape(c_tilde, a, b, "C~");
    if (error_bound < 0) throw PreconditionError("phase2_sample: negative error bound");
    std::vector<std::size_t> cols;
    if (columns) {
        cols = *columns;
        for (std::size_t j : cols)
            if (j >= b.cols()) throw DimensionError("phase2_sample: sampled column out of range");
    } else if (b.cols() > 0) {
        const std::size_t rho = resolve_rho(config, a, b, error_bound);
        const std::size_t n = std::max({a.rows(), b.rows(), b.cols()});
        const std::size_t rounds = config.rounds.value_or(params::rounds(rho, n));
        SplitRng rng = SplitRng(config.seed).split("phase2");
        for (std::size_t r = 0; r < rounds; ++r) cols.push_back(static_cast<std::size_t>(rng.below(b.cols())));
    }
    auto out = phase2_impl(a, b, c_tilde, error_bound, config, cols);
    if (config.collect_relevance)
        out.report.weakly_relevant_uncovered_count =
            count_weakly_relevant_uncovered(a, b, c_tilde, error_bound, out.report);
    return out;
}

IntMatrix phase3_correct(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c_tilde, const IntMatrix& c_hat,
                         const RelevanceReport& report, const BlockCertificate& cert, const MinPlusConfig& config,
                         std::size_t* triples_listed) {
    config.validate();
    require_inputs(a, b, cert, "phase3_correct");
    require_c_shape(c_tilde, a, b, "C~");
    require_c_shape(c_hat, a, b, "C^");
    if (report.rows != a.rows() || report.inner != a.cols() || report.covered.size() != a.rows() * a.cols())
        throw DimensionError("phase3_correct: relevance report has the wrong shape");
    return phase3_impl(a, b, c_tilde, c_hat, report, cert, config, triples_listed);
}

ColumnSelection derandomize_select(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c_tilde,
                                   const BlockCertificate& cert, std::size_t rho) {
    require_inputs(a, b, cert, "derandomize_select");
    require_c_shape(c_tilde, a, b, "C~");
    if (rho == 0) throw PreconditionError("derandomize_select: rho must be at least 1");
    return select_impl(a, c_tilde, cert, rho);
}

std::size_t count_weakly_relevant_uncovered(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c_tilde,
                                            Value error_bound, const RelevanceReport& report) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == kInf || report.is_covered(i, k)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (c_tilde(i, j) == kInf) continue;
                const Value gap = a(i, k) + b(k, j) - c_tilde(i, j);
                if (gap <= 3 * error_bound && gap >= -3 * error_bound) ++count;
            }
        }
    return count;
}

std::size_t count_weak_not_approx(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c_tilde,
                                  const BlockCertificate& cert) {
    const Value w = cert.error_bound();
    std::size_t count = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == kInf) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (c_tilde(i, j) == kInf) continue;
                const Value gap = a(i, k) + b(k, j) - c_tilde(i, j);
                if (gap > 3 * w || gap < -3 * w) continue;
                const __int128 surrogate = static_cast<__int128>(a(i, k)) + cert.approx(k, j) - c_tilde(i, j);
                if (surrogate > 4 * w || surrogate < -4 * w) ++count;
            }
        }
    return count;
}

namespace detail {

IntMatrix minplus_structured_unchecked(const IntMatrix& a, const IntMatrix& b, const BlockCertificate& cert,
                                       const MinPlusConfig& config, StructuredStats* stats) {
    StructuredStats local;
    const Value w = cert.error_bound();
    MinPlusConfig cfg = config;
    if (cfg.deterministic) cfg.cap_multiplier = 5;
    local.rho = resolve_rho(cfg, a, b, w);

    auto t0 = Clock::now();
    const IntMatrix c_tilde = phase1_impl(a, cert, cfg);
    local.phase1_ms = elapsed_ms(t0);

    t0 = Clock::now();
    std::vector<std::size_t> columns;
    if (cfg.deterministic) {
        auto sel = select_impl(a, c_tilde, cert, local.rho);
        columns = std::move(sel.columns);
        local.hitting_set_size = columns.size();
    } else if (b.cols() > 0) {
        const std::size_t n = std::max({a.rows(), b.rows(), b.cols()});
        const std::size_t rounds = cfg.rounds.value_or(params::rounds(local.rho, n));
        SplitRng rng = SplitRng(cfg.seed).split("phase2");
        for (std::size_t r = 0; r < rounds; ++r) columns.push_back(static_cast<std::size_t>(rng.below(b.cols())));
    }
    local.select_ms = elapsed_ms(t0);

    t0 = Clock::now();
    Phase2Result p2 = phase2_impl(a, b, c_tilde, w, cfg, columns);
    local.phase2_ms = elapsed_ms(t0);
    local.rounds = columns.size();
    local.large_buckets_scanned = p2.large_buckets_scanned;
    for (std::size_t x = 0; x < a.rows() * a.cols(); ++x) {
        if (a.values()[x] == kInf) continue;
        ++local.finite_pairs;
        local.covered_pairs += p2.report.covered[x] != 0;
    }
    if (cfg.collect_relevance)
        local.weakly_relevant_uncovered = count_weakly_relevant_uncovered(a, b, c_tilde, w, p2.report);

    t0 = Clock::now();
    IntMatrix c = phase3_impl(a, b, c_tilde, p2.c_hat, p2.report, cert, cfg, &local.triples_listed);
    local.phase3_ms = elapsed_ms(t0);
    local.sampled_columns = std::move(columns);
    if (stats) *stats = std::move(local);
    return c;
}

}  // namespace detail

IntMatrix minplus_structured(const IntMatrix& a, const IntMatrix& b, const BlockCertificate& cert,
                             const MinPlusConfig& config, StructuredStats* stats) {
    config.validate();
    require_inputs(a, b, cert, "minplus_structured");
    return detail::minplus_structured_unchecked(a, b, cert, config, stats);
}

}  // namespace trop
