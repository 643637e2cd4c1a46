#pragma once

// Dense integer matrices over the tropical semiring.
//
// Entries are 64-bit signed integers with two reserved sentinels: kInf
// (the min-plus zero) and kNegInf (the max-plus zero). Finite entries
// handed to the public algorithms are capped at 2^40 in magnitude so that
// sums of up to three entries plus a certificate inner product never leave
// the 64-bit range.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "trop/error.hpp"

namespace trop {

using Value = std::int64_t;

inline constexpr Value kInf = std::numeric_limits<Value>::max();
inline constexpr Value kNegInf = std::numeric_limits<Value>::min();
inline constexpr Value kEntryCap = Value{1} << 40;

constexpr bool is_finite(Value v) noexcept { return v != kInf && v != kNegInf; }

// Min-plus "multiplication": INF absorbs.
constexpr Value trop_add(Value a, Value b) noexcept {
    return (a == kInf || b == kInf) ? kInf : a + b;
}

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols, Value fill = kInf)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    IntMatrix(std::initializer_list<std::initializer_list<Value>> rows);

    static IntMatrix from_rows(const std::vector<std::vector<Value>>& rows);
    // 0 on the diagonal, INF elsewhere.
    static IntMatrix tropical_identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    Value& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Value operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<Value> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const Value> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<const Value> values() const noexcept { return data_; }
    std::span<Value> values() noexcept { return data_; }

    IntMatrix transposed() const;
    IntMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

    bool operator==(const IntMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Value> data_;
};

// Swaps INF and NEG_INF and negates finite entries.
IntMatrix negate(const IntMatrix& a);

// Entrywise minimum of two same-shaped matrices.
IntMatrix entrywise_min(const IntMatrix& a, const IntMatrix& b);

// Throws OverflowError if a finite entry exceeds kEntryCap in magnitude, or
// PreconditionError if a NEG_INF appears where only min-plus values are allowed.
void require_minplus_domain(const IntMatrix& a, const char* name);
void require_all_finite(const IntMatrix& a, const char* name);

// Text format: "rows cols" then one line per row of whitespace separated
// tokens, each a decimal integer or "inf" ("-inf" for max-plus results).
// Lines starting with '#' are comments.
IntMatrix parse_matrix(std::istream& in);
IntMatrix parse_matrix(const std::string& text);
IntMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const IntMatrix& a);
std::string format_matrix(const IntMatrix& a);
std::string format_value(Value v);

// Shared tokenizer for the text formats; tracks line numbers for errors.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    // Next non-empty, non-comment line split into tokens. False at EOF.
    bool next(std::vector<std::string>& tokens);
    std::size_t line() const noexcept { return line_; }

    // Like next() but a missing line is a ParseError.
    std::vector<std::string> expect(const char* what);

private:
    std::istream& in_;
    std::size_t line_ = 0;
};

Value parse_value(const std::string& token, std::size_t line);
std::int64_t parse_int(const std::string& token, std::size_t line);
std::size_t parse_count(const std::string& token, std::size_t line);

}  // namespace trop
