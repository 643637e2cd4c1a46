#include <gtest/gtest.h>

#include <random>

#include "trop/halfspace.hpp"

using namespace trop;

namespace {

__int128 dot(const std::vector<Value>& a, std::span<const Value> b) {
    __int128 s = 0;
    for (std::size_t t = 0; t < a.size(); ++t) s += static_cast<__int128>(a[t]) * b[t];
    return s;
}

struct Instance {
    std::vector<std::vector<Value>> points;
    HalfspaceIndex index;
};

Instance random_instance(std::mt19937_64& rng, std::size_t count, std::size_t dim) {
    std::uniform_int_distribution<Value> coord(-1000, 1000);
    std::vector<std::vector<Value>> pts(count, std::vector<Value>(dim));
    PointSet set(dim);
    for (std::size_t i = 0; i < count; ++i) {
        for (auto& c : pts[i]) c = coord(rng);
        set.add(pts[i], i);
    }
    return {pts, HalfspaceIndex::build(std::move(set))};
}

}  // namespace

TEST(Halfspace, EmptySet) {
    auto index = HalfspaceIndex::build(PointSet(3));
    Halfspace h{{1, 0, 0}, Value{1} << 40};
    EXPECT_FALSE(index.contains_any(h));
    EXPECT_TRUE(index.report(h).empty());
    std::vector<Value> v{1, 2, 3};
    EXPECT_EQ(index.min_dot(v), kInf);
}

TEST(Halfspace, SinglePoint) {
    PointSet set(2);
    std::vector<Value> origin{0, 0};
    set.add(origin, 7);
    auto index = HalfspaceIndex::build(std::move(set));
    EXPECT_TRUE(index.contains_any({{3, -4}, 0}));
    std::vector<Value> p{5, -2};
    PointSet one(2);
    one.add(p, 0);
    auto single = HalfspaceIndex::build(std::move(one));
    std::vector<Value> v{3, 4};
    EXPECT_EQ(single.min_dot(v), 3 * 5 + 4 * -2);
}

TEST(Halfspace, HugeOffsetAcceptsEverything) {
    std::mt19937_64 rng(1);
    auto inst = random_instance(rng, 40, 3);
    Halfspace h{{7, -3, 2}, Value{1} << 62};
    EXPECT_TRUE(inst.index.contains_any(h));
    EXPECT_EQ(inst.index.report(h).size(), 40u);
    Halfspace none{{0, 0, 1}, -2000};
    EXPECT_TRUE(inst.index.report(none).empty());
}

TEST(Halfspace, MatchesScan) {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<Value> normal(-50, 50), offset(-60000, 60000);
    for (std::size_t dim : {2u, 3u, 5u}) {
        auto inst = random_instance(rng, 50, dim);
        for (int q = 0; q < 50; ++q) {
            Halfspace h{std::vector<Value>(dim), offset(rng)};
            for (auto& c : h.normal) c = normal(rng);
            std::vector<std::size_t> expected;
            __int128 best = 0;
            for (std::size_t i = 0; i < inst.points.size(); ++i) {
                __int128 s = dot(h.normal, inst.points[i]);
                if (s <= h.offset) expected.push_back(i);
                if (i == 0 || s < best) best = s;
            }
            auto got = inst.index.report(h);
            EXPECT_EQ(got, expected);
            EXPECT_EQ(inst.index.contains_any(h), !expected.empty());
            EXPECT_EQ(inst.index.min_dot(h.normal), static_cast<Value>(best));
            EXPECT_EQ(inst.index.min_dot_by_search(h.normal), static_cast<Value>(best));
            EXPECT_EQ(inst.index.min_dot(h.normal) <= h.offset, inst.index.contains_any(h));
            if (expected.size() > 2) EXPECT_EQ(inst.index.report(h, 2).size(), 2u);
        }
    }
}

TEST(Halfspace, DimensionMismatch) {
    auto index = HalfspaceIndex::build(PointSet(2));
    EXPECT_THROW(index.contains_any({{1, 2, 3}, 0}), InputError);
    PointSet set(2);
    std::vector<Value> bad{1, 2, 3};
    EXPECT_THROW(set.add(bad, 0), InputError);
}
