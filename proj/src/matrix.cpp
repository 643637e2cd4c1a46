#include "trop/matrix.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace trop {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Value>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionError("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Value>>& rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) throw DimensionError("ragged matrix rows");
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::tropical_identity(std::size_t n) {
    IntMatrix m(n, n, kInf);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 0;
    return m;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
    IntMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

IntMatrix negate(const IntMatrix& a) {
    IntMatrix out(a.rows(), a.cols());
    auto src = a.values();
    auto dst = out.values();
    for (std::size_t i = 0; i < src.size(); ++i) {
        Value v = src[i];
        dst[i] = v == kInf ? kNegInf : v == kNegInf ? kInf : -v;
    }
    return out;
}

IntMatrix entrywise_min(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("entrywise_min: shape mismatch");
    IntMatrix out = a;
    auto dst = out.values();
    auto src = b.values();
    for (std::size_t i = 0; i < dst.size(); ++i)
        if (src[i] < dst[i]) dst[i] = src[i];
    return out;
}

void require_minplus_domain(const IntMatrix& a, const char* name) {
    for (Value v : a.values()) {
        if (v == kInf) continue;
        if (v == kNegInf)
            throw PreconditionError(std::string(name) + ": -inf entry in a min-plus operand");
        if (v > kEntryCap || v < -kEntryCap)
            throw OverflowError(std::string(name) + ": entry " + std::to_string(v) +
                                " exceeds magnitude cap 2^40");
    }
}

void require_all_finite(const IntMatrix& a, const char* name) {
    for (Value v : a.values())
        if (!is_finite(v)) throw PreconditionError(std::string(name) + ": infinite entry not allowed");
}

// --- text format -----------------------------------------------------------

bool LineReader::next(std::vector<std::string>& tokens) {
    std::string text;
    while (std::getline(in_, text)) {
        ++line_;
        auto first = text.find_first_not_of(" \t\r");
        if (first == std::string::npos || text[first] == '#') continue;
        tokens.clear();
        std::istringstream ss(text);
        std::string tok;
        while (ss >> tok) tokens.push_back(tok);
        return true;
    }
    return false;
}

std::vector<std::string> LineReader::expect(const char* what) {
    std::vector<std::string> tokens;
    if (!next(tokens)) throw ParseError(line_ + 1, std::string("unexpected end of input, expected ") + what);
    return tokens;
}

std::int64_t parse_int(const std::string& token, std::size_t line) {
    std::int64_t v = 0;
    const char* first = token.data();
    const char* last = first + token.size();
    if (!token.empty() && token[0] == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) throw ParseError(line, "bad integer token '" + token + "'");
    return v;
}

std::size_t parse_count(const std::string& token, std::size_t line) {
    std::int64_t v = parse_int(token, line);
    if (v < 0) throw ParseError(line, "negative count '" + token + "'");
    return static_cast<std::size_t>(v);
}

Value parse_value(const std::string& token, std::size_t line) {
    if (token == "inf") return kInf;
    if (token == "-inf") return kNegInf;
    Value v = parse_int(token, line);
    if (v > kEntryCap || v < -kEntryCap)
        throw ParseError(line, "entry " + token + " exceeds magnitude cap 2^40");
    return v;
}

IntMatrix parse_matrix(std::istream& in) {
    LineReader reader(in);
    auto header = reader.expect("matrix header 'rows cols'");
    if (header.size() != 2) throw ParseError(reader.line(), "matrix header must be 'rows cols'");
    std::size_t rows = parse_count(header[0], reader.line());
    std::size_t cols = parse_count(header[1], reader.line());
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        auto tokens = reader.expect("matrix row");
        if (tokens.size() != cols)
            throw ParseError(reader.line(), "expected " + std::to_string(cols) + " entries, got " +
                                                std::to_string(tokens.size()));
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = parse_value(tokens[j], reader.line());
    }
    return m;
}

IntMatrix parse_matrix(const std::string& text) {
    std::istringstream in(text);
    return parse_matrix(in);
}

IntMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return parse_matrix(in);
}

std::string format_value(Value v) {
    if (v == kInf) return "inf";
    if (v == kNegInf) return "-inf";
    return std::to_string(v);
}

void write_matrix(std::ostream& out, const IntMatrix& a) {
    out << a.rows() << ' ' << a.cols() << '\n';
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j) out << ' ';
            out << format_value(a(i, j));
        }
        out << '\n';
    }
}

std::string format_matrix(const IntMatrix& a) {
    std::ostringstream out;
    write_matrix(out, a);
    return out.str();
}

}  // namespace trop
