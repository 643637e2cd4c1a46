#include "trop/range_mode.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>

#include "trop/certificate.hpp"
#include "trop/params.hpp"

namespace trop {

void RangeModeInstance::validate() const {
    for (std::size_t q = 0; q < queries.size(); ++q) {
        const auto& [l, r] = queries[q];
        if (l < 1 || l > r || r > seq.size())
            throw PreconditionError("query " + std::to_string(q) + " (" + std::to_string(l) + ", " +
                                    std::to_string(r) + ") outside 1 <= l <= r <= " + std::to_string(seq.size()));
    }
}

namespace {

// Dense ids 0..sigma-1 in value order.
std::vector<std::size_t> remap(const std::vector<Value>& seq, std::size_t& sigma) {
    std::vector<Value> values(seq);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    sigma = values.size();
    std::vector<std::size_t> out(seq.size());
    for (std::size_t x = 0; x < seq.size(); ++x)
        out[x] = static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), seq[x]) - values.begin());
    return out;
}

// Prefix maximum over positions, queried as a suffix maximum.
class SuffixMax {
public:
    explicit SuffixMax(std::size_t n) : tree_(n + 1, 0) {}

    void update(std::size_t pos, std::size_t value) {
        for (std::size_t x = tree_.size() - 1 - pos; x < tree_.size(); x += x & (~x + 1))
            tree_[x] = std::max(tree_[x], value);
    }

    // max over updated positions >= pos
    std::size_t query(std::size_t pos) const {
        std::size_t best = 0;
        for (std::size_t x = tree_.size() - 1 - pos; x > 0; x -= x & (~x + 1)) best = std::max(best, tree_[x]);
        return best;
    }

private:
    std::vector<std::size_t> tree_;
};

}  // namespace

std::vector<std::size_t> range_mode_naive(const RangeModeInstance& instance) {
    instance.validate();
    std::size_t sigma = 0;
    const auto ids = remap(instance.seq, sigma);
    std::vector<std::size_t> count(sigma), out;
    out.reserve(instance.queries.size());
    for (const auto& [l, r] : instance.queries) {
        std::fill(count.begin(), count.end(), 0);
        std::size_t best = 0;
        for (std::size_t x = l - 1; x < r; ++x) best = std::max(best, ++count[ids[x]]);
        out.push_back(best);
    }
    return out;
}

IntMatrix minplus_monotone(const IntMatrix& a, const IntMatrix& b, Value m, const MonotoneOptions& options,
                           MonotoneStats* stats) {
    if (a.cols() != b.rows()) throw DimensionError("minplus_monotone: inner dimensions differ");
    if (m < 0) throw PreconditionError("minplus_monotone: negative column-sum step");
    require_minplus_domain(a, "minplus_monotone A");
    require_minplus_domain(b, "minplus_monotone B");
    require_monotone_rows(b, m);
    MonotoneStats local;
    if (b.rows() == 0 || b.cols() == 0 || a.rows() == 0) {
        if (stats) *stats = local;
        return IntMatrix(a.rows(), b.cols(), kInf);
    }
    const std::size_t n = std::max({a.rows(), b.rows(), b.cols()});
    const double omega = options.structured.omega_eff;
    local.block_size = options.block_size.value_or(params::monotone_block_size(n, m, omega));
    local.gamma = options.gamma.value_or(params::monotone_gamma(n, m, omega));

    const MonotoneCertificate mc = cert_from_monotone(b, m, local.block_size, local.gamma);
    IntMatrix c = minplus_structured(a, mc.clamped, mc.cert, options.structured, &local.structured);
    for (const auto& cell : mc.corrections) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            const Value x = a(i, cell.row);
            if (x == kInf) continue;
            for (std::size_t j = cell.col_begin; j < cell.col_end; ++j) c(i, j) = std::min(c(i, j), x + b(cell.row, j));
        }
        local.corrections += cell.col_end - cell.col_begin;
    }
    if (stats) *stats = std::move(local);
    return c;
}

std::vector<std::size_t> batch_range_mode(const RangeModeInstance& instance, const RangeModeOptions& options,
                                          RangeModeStats* stats) {
    instance.validate();
    const std::size_t n = instance.seq.size();
    std::vector<std::size_t> answer(instance.queries.size(), 0);
    if (instance.queries.empty()) return answer;

    std::size_t sigma = 0;
    const auto ids = remap(instance.seq, sigma);
    RangeModeStats local;
    local.threshold = options.threshold.value_or(params::range_mode_threshold(n, options.monotone.structured.omega_eff));
    if (local.threshold == 0) throw PreconditionError("batch_range_mode: threshold must be positive");
    const std::size_t t_size = local.threshold;

    // Sorted positions of every value, for exact counting on any range.
    std::vector<std::vector<std::size_t>> positions(sigma);
    for (std::size_t x = 0; x < n; ++x) positions[ids[x]].push_back(x);
    auto count_in = [&](std::size_t v, std::size_t l, std::size_t r) {
        const auto& p = positions[v];
        return static_cast<std::size_t>(std::upper_bound(p.begin(), p.end(), r) -
                                        std::lower_bound(p.begin(), p.end(), l));
    };

    std::vector<std::size_t> seg_count(sigma, 0);
    std::vector<long> freq_index(sigma, -1);

    // Queries are 0-based [l, r] from here on.
    std::function<void(std::size_t, std::size_t, std::vector<std::size_t>&)> solve =
        [&](std::size_t lo, std::size_t hi, std::vector<std::size_t>& qids) {
            if (qids.empty()) return;
            if (lo == hi) {
                for (std::size_t q : qids) answer[q] = 1;
                return;
            }
            ++local.levels;
            const std::size_t mid = lo + (hi - lo) / 2;
            std::vector<std::size_t> left, right, cross;
            for (std::size_t q : qids) {
                const std::size_t l = instance.queries[q].l - 1, r = instance.queries[q].r - 1;
                if (r <= mid)
                    left.push_back(q);
                else if (l > mid)
                    right.push_back(q);
                else
                    cross.push_back(q);
            }

            if (!cross.empty()) {
                std::vector<std::size_t> present;
                for (std::size_t x = lo; x <= hi; ++x)
                    if (seg_count[ids[x]]++ == 0) present.push_back(ids[x]);

                // Infrequent values: every occurrence pair [p_a, p_b] with weight b - a + 1.
                struct Interval {
                    std::size_t left, right, weight;
                };
                std::vector<Interval> intervals;
                std::vector<std::size_t> frequent;
                for (std::size_t v : present) {
                    if (seg_count[v] > t_size) {
                        freq_index[v] = static_cast<long>(frequent.size());
                        frequent.push_back(v);
                        continue;
                    }
                    const auto& p = positions[v];
                    const auto first = std::lower_bound(p.begin(), p.end(), lo);
                    const std::size_t base = static_cast<std::size_t>(first - p.begin());
                    for (std::size_t a = 0; a < seg_count[v]; ++a)
                        for (std::size_t b = a; b < seg_count[v]; ++b)
                            intervals.push_back({p[base + a], p[base + b], b - a + 1});
                }
                local.intervals += intervals.size();
                std::sort(intervals.begin(), intervals.end(),
                          [](const Interval& x, const Interval& y) { return x.right < y.right; });
                std::vector<std::size_t> by_right(cross);
                std::sort(by_right.begin(), by_right.end(), [&](std::size_t x, std::size_t y) {
                    return instance.queries[x].r < instance.queries[y].r;
                });
                SuffixMax sweep(hi - lo + 1);
                std::size_t next = 0;
                for (std::size_t q : by_right) {
                    const std::size_t l = instance.queries[q].l - 1, r = instance.queries[q].r - 1;
                    for (; next < intervals.size() && intervals[next].right <= r; ++next)
                        sweep.update(intervals[next].left - lo, intervals[next].weight);
                    answer[q] = sweep.query(l - lo);
                }

                // Frequent values: blocks of width T with mid as a block edge.
                if (!frequent.empty()) {
                    const std::size_t f = frequent.size();
                    const std::size_t left_blocks = (mid - lo + 1) / t_size, right_blocks = (hi - mid) / t_size;
                    // A[s][v]: -count on [mid+1 - sT, mid]; B[v][t]: -count on [mid+1, mid + tT].
                    IntMatrix a(left_blocks + 1, f, 0), b(f, right_blocks + 1, 0);
                    for (std::size_t s = 1; s <= left_blocks; ++s) {
                        for (std::size_t v = 0; v < f; ++v) a(s, v) = a(s - 1, v);
                        for (std::size_t x = mid + 1 - s * t_size; x < mid + 1 - (s - 1) * t_size; ++x)
                            if (freq_index[ids[x]] >= 0) --a(s, static_cast<std::size_t>(freq_index[ids[x]]));
                    }
                    for (std::size_t t = 1; t <= right_blocks; ++t) {
                        for (std::size_t v = 0; v < f; ++v) b(v, t) = b(v, t - 1);
                        for (std::size_t x = mid + 1 + (t - 1) * t_size; x <= mid + t * t_size; ++x)
                            if (freq_index[ids[x]] >= 0) --b(static_cast<std::size_t>(freq_index[ids[x]]), t);
                    }
                    const IntMatrix c = minplus_monotone(a, b, static_cast<Value>(t_size), options.monotone);
                    ++local.products;

                    for (std::size_t q : cross) {
                        const std::size_t l = instance.queries[q].l - 1, r = instance.queries[q].r - 1;
                        const std::size_t s = (mid + 1 - l) / t_size, t = (r - mid) / t_size;
                        std::size_t best = static_cast<std::size_t>(-c(s, t));
                        auto consider = [&](std::size_t x) {
                            if (freq_index[ids[x]] < 0) return;
                            ++local.candidates_counted;
                            best = std::max(best, count_in(ids[x], l, r));
                        };
                        for (std::size_t x = l; x < mid + 1 - s * t_size; ++x) consider(x);
                        for (std::size_t x = mid + t * t_size + 1; x <= r; ++x) consider(x);
                        answer[q] = std::max(answer[q], best);
                    }
                }

                for (std::size_t v : present) {
                    seg_count[v] = 0;
                    freq_index[v] = -1;
                }
            }
            qids.clear();
            qids.shrink_to_fit();
            solve(lo, mid, left);
            solve(mid + 1, hi, right);
        };

    std::vector<std::size_t> all(instance.queries.size());
    for (std::size_t q = 0; q < all.size(); ++q) all[q] = q;
    solve(0, n - 1, all);
    if (stats) *stats = local;
    return answer;
}

RangeModeInstance parse_range_mode(std::istream& in) {
    LineReader reader(in);
    auto header = reader.expect("range-mode header");
    if (header.size() != 2) throw ParseError(reader.line(), "expected header \"n q\"");
    const std::size_t n = parse_count(header[0], reader.line());
    const std::size_t q = parse_count(header[1], reader.line());
    RangeModeInstance inst;
    if (n > 0) {
        auto values = reader.expect("sequence line");
        if (values.size() != n)
            throw ParseError(reader.line(), "expected " + std::to_string(n) + " values, got " +
                                                std::to_string(values.size()));
        inst.seq.reserve(n);
        for (const auto& tok : values) inst.seq.push_back(parse_int(tok, reader.line()));
    }
    for (std::size_t x = 0; x < q; ++x) {
        auto tokens = reader.expect("query line");
        if (tokens.size() != 2) throw ParseError(reader.line(), "expected \"l r\"");
        RangeQuery query{parse_count(tokens[0], reader.line()), parse_count(tokens[1], reader.line())};
        if (query.l < 1 || query.l > query.r || query.r > n)
            throw ParseError(reader.line(), "query outside 1 <= l <= r <= " + std::to_string(n));
        inst.queries.push_back(query);
    }
    std::vector<std::string> extra;
    if (reader.next(extra)) throw ParseError(reader.line(), "unexpected trailing data");
    return inst;
}

RangeModeInstance read_range_mode_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return parse_range_mode(in);
}

void write_range_mode(std::ostream& out, const RangeModeInstance& instance) {
    out << instance.seq.size() << ' ' << instance.queries.size() << '\n';
    for (std::size_t x = 0; x < instance.seq.size(); ++x) out << (x ? " " : "") << instance.seq[x];
    out << '\n';
    for (const auto& q : instance.queries) out << q.l << ' ' << q.r << '\n';
}

}  // namespace trop
