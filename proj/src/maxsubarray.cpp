#include "trop/maxsubarray.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "trop/certificate.hpp"
#include "trop/minplus.hpp"
#include "trop/params.hpp"

namespace trop {

Tensor::Tensor(std::vector<std::size_t> shape, Value fill) : shape_(std::move(shape)) {
    strides_.assign(shape_.size(), 1);
    std::size_t total = 1;
    for (std::size_t a = shape_.size(); a-- > 0;) {
        strides_[a] = total;
        total *= shape_[a];
    }
    data_.assign(shape_.empty() ? 0 : total, fill);
}

Tensor Tensor::from_matrix(const IntMatrix& a) {
    Tensor t({a.rows(), a.cols()});
    std::copy(a.values().begin(), a.values().end(), t.data_.begin());
    return t;
}

Value& Tensor::at(const std::vector<std::size_t>& idx) {
    std::size_t off = 0;
    for (std::size_t a = 0; a < idx.size(); ++a) off += idx[a] * strides_[a];
    return data_[off];
}

Value Tensor::at(const std::vector<std::size_t>& idx) const {
    std::size_t off = 0;
    for (std::size_t a = 0; a < idx.size(); ++a) off += idx[a] * strides_[a];
    return data_[off];
}

SubarrayResult kadane_1d(std::span<const Value> seq) {
    if (seq.empty()) throw DimensionError("kadane_1d: empty sequence");
    SubarrayResult best{seq[0], {{0, 0}}};
    Value run = seq[0];
    std::size_t start = 0;
    for (std::size_t i = 1; i < seq.size(); ++i) {
        if (run < 0) {
            run = seq[i];
            start = i;
        } else {
            run += seq[i];
        }
        if (run > best.best_sum) best = {run, {{start, i}}};
    }
    return best;
}

namespace {

SubarrayResult best_box(const std::vector<Value>& data, std::span<const std::size_t> shape) {
    if (shape.size() == 1) return kadane_1d(data);
    const std::size_t inner = data.size() / shape[0];
    std::optional<SubarrayResult> best;
    std::vector<Value> acc(inner);
    for (std::size_t lo = 0; lo < shape[0]; ++lo) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t hi = lo; hi < shape[0]; ++hi) {
            for (std::size_t x = 0; x < inner; ++x) acc[x] += data[hi * inner + x];
            SubarrayResult sub = best_box(acc, shape.subspan(1));
            if (!best || sub.best_sum > best->best_sum) {
                sub.box.insert(sub.box.begin(), {lo, hi});
                best = std::move(sub);
            }
        }
    }
    return *best;
}

void require_bounded_entries(const IntMatrix& a, Value bound, const char* who) {
    if (bound < 0) throw PreconditionError(std::string(who) + ": negative entry bound");
    for (Value v : a.values())
        if (!is_finite(v) || v > bound || v < -bound)
            throw PreconditionError(std::string(who) + ": entry " + format_value(v) + " exceeds M = " +
                                    std::to_string(bound));
}

}  // namespace

SubarrayResult max_subarray_dd(const Tensor& tensor) {
    if (tensor.dims() == 0 || tensor.size() == 0) throw DimensionError("max_subarray_dd: empty tensor");
    return best_box(tensor.data(), tensor.shape());
}

SubarrayResult max_subarray_2d(const IntMatrix& a) { return max_subarray_dd(Tensor::from_matrix(a)); }

Value box_sum(const Tensor& tensor, const std::vector<std::pair<std::size_t, std::size_t>>& box) {
    if (box.size() != tensor.dims()) throw DimensionError("box_sum: box dimension differs from tensor");
    Value total = 0;
    std::vector<std::size_t> idx(box.size());
    std::function<void(std::size_t)> walk = [&](std::size_t axis) {
        if (axis == box.size()) {
            total += tensor.at(idx);
            return;
        }
        for (idx[axis] = box[axis].first; idx[axis] <= box[axis].second; ++idx[axis]) walk(axis + 1);
    };
    walk(0);
    return total;
}

IntMatrix minplus_bdd(const IntMatrix& a, const IntMatrix& b, std::size_t order, Value bound,
                      const BddOptions& options, StructuredStats* stats) {
    if (a.cols() != b.rows()) throw DimensionError("minplus_bdd: inner dimensions differ");
    if (order < 1) throw PreconditionError("minplus_bdd: order must be >= 1");
    if (bound < 0) throw PreconditionError("minplus_bdd: negative bound");
    if (options.block_size && *options.block_size == 0) throw PreconditionError("minplus_bdd: block size must be positive");
    require_all_finite(b, "minplus_bdd B");
    require_minplus_domain(b, "minplus_bdd B");
    const Value worst = max_abs_finite_difference(b, order);
    if (worst > bound)
        throw PreconditionError("minplus_bdd: |D^" + std::to_string(order) + " B| reaches " + std::to_string(worst) +
                                " > M = " + std::to_string(bound));
    const std::size_t n = std::max({a.rows(), b.rows(), b.cols(), std::size_t{1}});
    const std::size_t delta =
        options.block_size.value_or(params::bdd_block_size(n, bound, order, options.structured.omega_eff));
    const BlockCertificate cert = cert_from_finite_difference(b, order, delta);
    return minplus_structured(a, b, cert, options.structured, stats);
}

Value max_subarray_2d_fast(const IntMatrix& a, Value bound, const FastSubarrayOptions& options,
                           FastSubarrayStats* stats) {
    if (a.rows() == 0 || a.cols() == 0) throw DimensionError("max_subarray_2d_fast: empty matrix");
    require_bounded_entries(a, bound, "max_subarray_2d_fast");
    const std::size_t m = a.rows(), n = a.cols();

    // S[i][j] = sum of A over rows < i, columns < j.
    IntMatrix padded(m + 1, n + 1, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) padded(i + 1, j + 1) = a(i, j);
    const IntMatrix s = prefix_sum_2d(padded);

    FastSubarrayStats local;
    auto column_best = [&](std::size_t col) {
        std::vector<Value> column(m);
        for (std::size_t i = 0; i < m; ++i) column[i] = a(i, col);
        return kadane_1d(column).best_sum;
    };

    // Best sum over column boundaries lo <= j1 < j2 <= hi.
    std::function<Value(std::size_t, std::size_t)> solve = [&](std::size_t lo, std::size_t hi) -> Value {
        if (hi - lo == 1) return column_best(lo);
        const std::size_t mid = lo + (hi - lo) / 2;
        const IntMatrix sl = s.block(0, lo, m + 1, mid - lo);
        const IntMatrix sr = s.block(0, mid + 1, m + 1, hi - mid);
        const IntMatrix bl = sl.transposed(), br = negate(sr.transposed());

        // f[i1][i2] = max_{j1} S[i1][j1] - S[i2][j1];  g[i1][i2] = max_{j2} S[i2][j2] - S[i1][j2].
        const IntMatrix f = negate(minplus_bdd(negate(sl), bl, 1, bound, options.bdd));
        const IntMatrix g = negate(minplus_bdd(sr, br, 1, bound, options.bdd));
        local.products += 2;

        Value cross = kNegInf;
        for (std::size_t i1 = 0; i1 <= m; ++i1)
            for (std::size_t i2 = i1 + 1; i2 <= m; ++i2) cross = std::max(cross, f(i1, i2) + g(i1, i2));

        if (options.validate) {
            const Value dl = max_abs_finite_difference(bl, 1), dr = max_abs_finite_difference(br, 1);
            local.max_operand_difference = std::max({local.max_operand_difference, dl, dr});
            if (dl > bound || dr > bound) throw std::logic_error("crossing operand violates the derivative bound");
            Value brute = kNegInf;
            for (std::size_t i1 = 0; i1 <= m; ++i1)
                for (std::size_t i2 = i1 + 1; i2 <= m; ++i2)
                    for (std::size_t j1 = lo; j1 < mid; ++j1)
                        for (std::size_t j2 = mid + 1; j2 <= hi; ++j2)
                            brute = std::max(brute, s(i2, j2) - s(i1, j2) - s(i2, j1) + s(i1, j1));
            if (brute != cross)
                throw std::logic_error("crossing case mismatch on columns [" + std::to_string(lo) + ", " +
                                       std::to_string(hi) + "]");
            ++local.levels_checked;
        }
        return std::max({cross, solve(lo, mid), solve(mid, hi)});
    };

    const Value best = solve(0, n);
    if (stats) *stats = local;
    return best;
}

CentralArray::CentralArray(std::size_t d, std::size_t n, Value fill) : d_(d), n_(n) {
    if (d == 0 || d > 8) throw DimensionError("central array dimension must be in 1..8");
    if (n == 0) throw DimensionError("central array half-width must be positive");
    std::size_t total = 1;
    for (std::size_t r = 0; r < d; ++r) total *= side();
    data_.assign(total, fill);
}

std::size_t CentralArray::offset(const std::vector<long>& idx) const {
    if (idx.size() != d_) throw DimensionError("central array index has the wrong dimension");
    std::size_t off = 0;
    const long n = static_cast<long>(n_);
    for (long v : idx) {
        if (v < -n || v > n) throw DimensionError("central array index out of range");
        off = off * side() + static_cast<std::size_t>(v + n);
    }
    return off;
}

CentralResult central_max_subarray_naive(const CentralArray& c) {
    const std::size_t d = c.d();
    const long n = static_cast<long>(c.n());
    std::vector<long> pos(d, 1), neg(d, -n), corner(d);
    CentralResult best;
    bool any = false;
    auto advance = [&](std::vector<long>& v, long lo, long hi) {
        for (std::size_t r = d; r-- > 0;) {
            if (++v[r] <= hi) return true;
            v[r] = lo;
        }
        return false;
    };
    do {
        std::fill(neg.begin(), neg.end(), -n);
        do {
            Value sum = 0;
            for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
                for (std::size_t r = 0; r < d; ++r) corner[r] = (mask >> r) & 1 ? neg[r] : pos[r];
                sum += c.at(corner);
            }
            if (!any || sum > best.best) {
                any = true;
                best.best = sum;
                best.i = pos;
                best.delta.resize(d);
                for (std::size_t r = 0; r < d; ++r) best.delta[r] = pos[r] - neg[r];
            }
        } while (advance(neg, -n, -1));
    } while (advance(pos, 1, n));
    return best;
}

Value central_max_subarray_2d_fast(const CentralArray& c, Value bound) {
    if (c.d() != 2) throw DimensionError("central_max_subarray_2d_fast: array must be 2-dimensional");
    if (bound < 0) throw PreconditionError("central_max_subarray_2d_fast: negative bound");
    const std::size_t n = c.n();
    const long ln = static_cast<long>(n);
    auto neg = [&](std::size_t a) { return -ln + static_cast<long>(a); };
    auto pos = [&](std::size_t a) { return static_cast<long>(a) + 1; };

    // rows: x1 < 0, inner: y, columns: x2 > 0.
    IntMatrix lower_left(n, n), lower_right(n, n), upper_left(n, n), upper_right(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            lower_left(a, b) = -c.at2(neg(a), neg(b));
            lower_right(b, a) = -c.at2(pos(a), neg(b));
            upper_left(a, b) = -c.at2(neg(a), pos(b));
            upper_right(b, a) = -c.at2(pos(a), pos(b));
        }
    const IntMatrix down = minplus_bounded(lower_left, lower_right, bound);
    const IntMatrix up = minplus_bounded(upper_left, upper_right, bound);
    Value best = kNegInf;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) best = std::max(best, -down(a, b) - up(a, b));
    return best;
}

CentralArray parse_central(std::istream& in) {
    LineReader reader(in);
    auto header = reader.expect("central array header");
    if (header.size() != 2) throw ParseError(reader.line(), "expected header \"d n\"");
    const std::size_t d = parse_count(header[0], reader.line());
    const std::size_t n = parse_count(header[1], reader.line());
    if (d == 0 || d > 8 || n == 0) throw ParseError(reader.line(), "need 1 <= d <= 8 and n >= 1");
    CentralArray c(d, n);
    const std::size_t side = c.side();
    const std::size_t lines = c.data().size() / side;
    for (std::size_t l = 0; l < lines; ++l) {
        auto tokens = reader.expect("central array row");
        if (tokens.size() != side)
            throw ParseError(reader.line(), "expected " + std::to_string(side) + " values, got " +
                                                std::to_string(tokens.size()));
        for (std::size_t x = 0; x < side; ++x) {
            const Value v = parse_value(tokens[x], reader.line());
            if (!is_finite(v)) throw ParseError(reader.line(), "central array entries must be finite");
            c.data()[l * side + x] = v;
        }
    }
    std::vector<std::string> extra;
    if (reader.next(extra)) throw ParseError(reader.line(), "unexpected trailing data");
    return c;
}

CentralArray read_central_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return parse_central(in);
}

void write_central(std::ostream& out, const CentralArray& c) {
    out << c.d() << ' ' << c.n() << '\n';
    const std::size_t side = c.side();
    for (std::size_t x = 0; x < c.data().size(); ++x) {
        out << c.data()[x];
        out << ((x + 1) % side == 0 ? '\n' : ' ');
    }
}

}  // namespace trop
