#pragma once

// Exact halfspace queries over small-dimensional integer point sets.
//
// The index answers three questions about a fixed point set P:
//   contains_any(h)  does some x in P satisfy normal . x <= offset?
//   report(h)        which points do?
//   min_dot(v)       min over x in P of v . x
// All arithmetic is exact (128-bit intermediates). The backing structure is a
// linear scan with per-coordinate bounding boxes used to skip the scan when a
// query is decided by the box alone.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "trop/matrix.hpp"

namespace trop {

inline constexpr std::size_t kMinPointDim = 2;
inline constexpr std::size_t kMaxPointDim = 16;
inline constexpr Value kCoordinateCap = Value{1} << 42;

struct Halfspace {
    std::vector<Value> normal;
    Value offset = 0;
};

class PointSet {
public:

    explicit PointSet(std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return ids_.size(); }
    bool empty() const noexcept { return ids_.empty(); }

    void add(std::span<const Value> point, std::size_t id);
    void clear() noexcept {
        coords_.clear();
        ids_.clear();
    }

    std::span<const Value> point(std::size_t idx) const { return {coords_.data() + idx * dim_, dim_}; }
    std::size_t id(std::size_t idx) const { return ids_[idx]; }

private:
    std::size_t dim_;
    std::vector<Value> coords_;
    std::vector<std::size_t> ids_;
};

class HalfspaceIndex {
public:
    static HalfspaceIndex build(PointSet points);
    // Replaces the indexed set with `points`, reusing storage; `points`
    // receives the previous set.
    void rebuild(PointSet& points);

    std::size_t dim() const noexcept { return points_.dim(); }
    std::size_t size() const noexcept { return points_.size(); }

    bool contains_any(const Halfspace& h) const;
    // Ids of the points inside h, in insertion order. With a limit, stops
    // once `limit` ids have been collected.
    std::vector<std::size_t> report(const Halfspace& h, std::optional<std::size_t> limit = {}) const;
    // kInf on an empty set.
    Value min_dot(std::span<const Value> v) const;
    // Same value as min_dot, found by binary search over the offset using
    // contains_any only.
    Value min_dot_by_search(std::span<const Value> v) const;

private:
    explicit HalfspaceIndex(PointSet points);
    void compute_box();

    __int128 dot(std::span<const Value> v, std::size_t idx) const;
    // Bounds of v . x over the bounding box of the stored points.
    std::pair<__int128, __int128> box_range(std::span<const Value> v) const;
    void require_dim(std::size_t d) const;

    PointSet points_;
    std::vector<Value> lo_, hi_;
};

}  // namespace trop
