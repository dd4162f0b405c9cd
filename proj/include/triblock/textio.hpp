// SPDX-License-Identifier: MIT
#pragma once

// Plain-text matrix format and runtime field dispatch.
//
// A matrix file is a header line
//
//     <field> <rows> <cols>
//
// with <field> one of `f2`, `fp:<prime>`, `q`, followed by <rows> lines of
// <cols> whitespace-separated entries (GF(p) entries are reduced into
// [0, p); rationals accept `a` or `a/b`).  Blank lines and trailing
// whitespace are ignored; `#` starts a comment to end of line.

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>

#include "triblock/errors.hpp"
#include "triblock/field.hpp"
#include "triblock/matrix.hpp"

namespace triblock {

using AnyField = std::variant<F2, Fp, Rationals>;
using AnyMatrix = std::variant<Matrix<F2>, Matrix<Fp>, Matrix<Rationals>>;

// "f2" | "fp:<prime>" | "q"
inline AnyField parse_field_tag(const std::string& tag) {
    if (tag == "f2") return F2{};
    if (tag == "q") return Rationals{};
    if (tag.rfind("fp:", 0) == 0) {
        const std::string num = tag.substr(3);
        std::uint64_t p = 0;
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(num, &used, 10);
            if (used != num.size()) throw std::invalid_argument(num);
            p = v;
        } catch (const std::exception&) {
            throw ParseError("bad prime in field tag '" + tag + "'");
        }
        try {
            return Fp(p);
        } catch (const PreconditionError& e) {
            throw ParseError(e.what());
        }
    }
    throw ParseError("unknown field tag '" + tag + "' (expected f2, fp:<prime>, or q)");
}

inline std::string field_tag(const AnyField& f) {
    return std::visit([](const auto& ff) { return ff.tag(); }, f);
}

namespace detail {

// Next non-blank line with comments stripped; false at end of input.
inline bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream probe(line);
        std::string token;
        if (probe >> token) return true;
    }
    return false;
}

template <FieldType F>
Matrix<F> parse_matrix_body(std::istream& in, F field, std::size_t rows, std::size_t cols) {
    Matrix<F> m(field, rows, cols);
    std::string line;
    for (std::size_t i = 0; i < rows; ++i) {
        if (!next_content_line(in, line))
            throw ParseError("matrix body ends early: expected " + std::to_string(rows) +
                             " rows, got " + std::to_string(i));
        std::istringstream ls(line);
        std::string token;
        for (std::size_t j = 0; j < cols; ++j) {
            if (!(ls >> token))
                throw ParseError("row " + std::to_string(i + 1) + " has fewer than " +
                                 std::to_string(cols) + " entries");
            m(i, j) = field.parse(token);
        }
        if (ls >> token)
            throw ParseError("row " + std::to_string(i + 1) + " has more than " +
                             std::to_string(cols) + " entries");
    }
    return m;
}

}  // namespace detail

inline AnyMatrix parse_matrix_text(std::istream& in) {
    std::string line;
    if (!detail::next_content_line(in, line)) throw ParseError("empty matrix input");
    std::istringstream hs(line);
    std::string tag;
    long long rows = -1, cols = -1;
    if (!(hs >> tag >> rows >> cols) || rows < 0 || cols < 0)
        throw ParseError("bad header line (expected '<field> <rows> <cols>'): '" + line + "'");
    std::string extra;
    if (hs >> extra) throw ParseError("trailing junk in header line: '" + line + "'");
    const AnyField field = parse_field_tag(tag);
    return std::visit(
        [&](auto f) -> AnyMatrix {
            return detail::parse_matrix_body(in, std::move(f), static_cast<std::size_t>(rows),
                                             static_cast<std::size_t>(cols));
        },
        field);
}

template <FieldType F>
void write_matrix_text(std::ostream& out, const Matrix<F>& m) {
    out << m.field().tag() << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << m.field().to_string(m(i, j));
        }
        out << '\n';
    }
}

inline void write_matrix_text(std::ostream& out, const AnyMatrix& m) {
    std::visit([&](const auto& mm) { write_matrix_text(out, mm); }, m);
}

// Row rendering used by the JSON report schema: one string per row,
// entries space-separated in the field's text syntax.
template <FieldType F>
std::string row_string(const Matrix<F>& m, std::size_t i) {
    std::string s;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (j) s += ' ';
        s += m.field().to_string(m(i, j));
    }
    return s;
}

}  // namespace triblock
