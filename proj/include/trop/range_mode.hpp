#pragma once

// Batch range mode: for each query [l, r] the largest number of times any
// single value occurs in seq[l..r].

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trop/matrix.hpp"
#include "trop/structured.hpp"

namespace trop {

struct RangeQuery {
    std::size_t l = 0, r = 0;  // 1-based, inclusive
};

struct RangeModeInstance {
    std::vector<Value> seq;
    std::vector<RangeQuery> queries;

    void validate() const;
};

std::vector<std::size_t> range_mode_naive(const RangeModeInstance& instance);

struct MonotoneOptions {
    std::optional<std::size_t> block_size;
    std::optional<Value> gamma;
    MinPlusConfig structured;
};

struct MonotoneStats {
    std::size_t block_size = 0;
    Value gamma = 0;
    std::size_t corrections = 0;
    StructuredStats structured;
};

// Exact A * B when every row of B is non-increasing and adjacent column sums
// of B differ by at most m: clamp steep row segments, multiply the clamped
// matrix through its rank-1 certificate, then relax with the clamped cells.
IntMatrix minplus_monotone(const IntMatrix& a, const IntMatrix& b, Value m, const MonotoneOptions& options = {},
                           MonotoneStats* stats = nullptr);

struct RangeModeOptions {
    std::optional<std::size_t> threshold;  // T; default n^((8+omega)/(19+omega))
    MonotoneOptions monotone;
};

struct RangeModeStats {
    std::size_t threshold = 0;
    std::size_t levels = 0;
    std::size_t products = 0;
    std::size_t intervals = 0;
    std::size_t candidates_counted = 0;
};

std::vector<std::size_t> batch_range_mode(const RangeModeInstance& instance, const RangeModeOptions& options = {},
                                          RangeModeStats* stats = nullptr);

// "n q", then the n values on one line, then q lines "l r".
RangeModeInstance parse_range_mode(std::istream& in);
RangeModeInstance read_range_mode_file(const std::string& path);
void write_range_mode(std::ostream& out, const RangeModeInstance& instance);

}  // namespace trop
