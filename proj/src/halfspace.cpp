#include "trop/halfspace.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace trop {

namespace {

constexpr __int128 kValueMax = std::numeric_limits<Value>::max();
constexpr __int128 kValueMin = std::numeric_limits<Value>::min();

}  // namespace

PointSet::PointSet(std::size_t dim) : dim_(dim) {
    if (dim < kMinPointDim || dim > kMaxPointDim)
        throw DimensionError("point dimension " + std::to_string(dim) + " outside [2, 16]");
}

void PointSet::add(std::span<const Value> point, std::size_t id) {
    if (point.size() != dim_)
        throw DimensionError("point of dimension " + std::to_string(point.size()) + " added to a " +
                             std::to_string(dim_) + "-dimensional set");
    for (Value c : point)
        if (c > kCoordinateCap || c < -kCoordinateCap) throw OverflowError("point coordinate exceeds 2^42");
    coords_.insert(coords_.end(), point.begin(), point.end());
    ids_.push_back(id);
}

HalfspaceIndex::HalfspaceIndex(PointSet points) : points_(std::move(points)) { compute_box(); }

void HalfspaceIndex::rebuild(PointSet& points) {
    std::swap(points_, points);
    compute_box();
}

void HalfspaceIndex::compute_box() {
    const std::size_t d = points_.dim();
    lo_.assign(d, std::numeric_limits<Value>::max());
    hi_.assign(d, std::numeric_limits<Value>::min());
    for (std::size_t p = 0; p < points_.size(); ++p) {
        auto x = points_.point(p);
        for (std::size_t c = 0; c < d; ++c) {
            lo_[c] = std::min(lo_[c], x[c]);
            hi_[c] = std::max(hi_[c], x[c]);
        }
    }
}

HalfspaceIndex HalfspaceIndex::build(PointSet points) { return HalfspaceIndex(std::move(points)); }

void HalfspaceIndex::require_dim(std::size_t d) const {
    if (d != points_.dim())
        throw DimensionError("query of dimension " + std::to_string(d) + " against a " +
                             std::to_string(points_.dim()) + "-dimensional index");
}

__int128 HalfspaceIndex::dot(std::span<const Value> v, std::size_t idx) const {
    auto x = points_.point(idx);
    __int128 s = 0;
    for (std::size_t c = 0; c < x.size(); ++c) s += static_cast<__int128>(v[c]) * x[c];
    return s;
}

std::pair<__int128, __int128> HalfspaceIndex::box_range(std::span<const Value> v) const {
    __int128 lo = 0, hi = 0;
    for (std::size_t c = 0; c < v.size(); ++c) {
        __int128 a = static_cast<__int128>(v[c]) * lo_[c];
        __int128 b = static_cast<__int128>(v[c]) * hi_[c];
        lo += std::min(a, b);
        hi += std::max(a, b);
    }
    return {lo, hi};
}

bool HalfspaceIndex::contains_any(const Halfspace& h) const {
    require_dim(h.normal.size());
    if (points_.empty()) return false;
    auto [lo, hi] = box_range(h.normal);
    if (lo > h.offset) return false;
    if (hi <= h.offset) return true;
    for (std::size_t p = 0; p < points_.size(); ++p)
        if (dot(h.normal, p) <= h.offset) return true;
    return false;
}

std::vector<std::size_t> HalfspaceIndex::report(const Halfspace& h, std::optional<std::size_t> limit) const {
    require_dim(h.normal.size());
    std::vector<std::size_t> out;
    if (points_.empty() || (limit && *limit == 0)) return out;
    if (box_range(h.normal).first > h.offset) return out;
    for (std::size_t p = 0; p < points_.size(); ++p) {
        if (dot(h.normal, p) <= h.offset) {
            out.push_back(points_.id(p));
            if (limit && out.size() >= *limit) break;
        }
    }
    return out;
}

Value HalfspaceIndex::min_dot(std::span<const Value> v) const {
    require_dim(v.size());
    if (points_.empty()) return kInf;
    __int128 best = dot(v, 0);
    for (std::size_t p = 1; p < points_.size(); ++p) best = std::min(best, dot(v, p));
    if (best > kValueMax - 1 || best < kValueMin + 1) throw OverflowError("min_dot result exceeds 64 bits");
    return static_cast<Value>(best);
}

Value HalfspaceIndex::min_dot_by_search(std::span<const Value> v) const {
    require_dim(v.size());
    if (points_.empty()) return kInf;
    auto [lo, hi] = box_range(v);
    lo = std::max(lo, kValueMin + 1);
    hi = std::min(hi, kValueMax - 1);
    Halfspace h{std::vector<Value>(v.begin(), v.end()), 0};
    h.offset = static_cast<Value>(hi);
    if (!contains_any(h)) throw OverflowError("min_dot result exceeds 64 bits");
    // Smallest offset b with a point in {x : v.x <= b}.
    while (lo < hi) {
        const __int128 mid = lo + (hi - lo) / 2;
        h.offset = static_cast<Value>(mid);
        if (contains_any(h))
            hi = mid;
        else
            lo = mid + 1;
    }
    return static_cast<Value>(lo);
}

}  // namespace trop
