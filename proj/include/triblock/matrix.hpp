// SPDX-License-Identifier: MIT
#pragma once

// Dense matrices over an exact field, plus the elimination-based kernels the
// rest of the library is built on: reduced row/column echelon forms, rank,
// inverse, rank normal form and a generalized inverse.
//
// Pivoting is deterministic everywhere: scan columns left to right and pick
// the topmost usable row.  Over exact fields there is no numerical reason to
// prefer any other pivot, and a fixed rule makes every derived object
// (echelon bases, kernels, factorizations) reproducible bit for bit.

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "triblock/errors.hpp"
#include "triblock/field.hpp"

namespace triblock {

template <FieldType F>
class Matrix {
public:
    using Field = F;
    using Value = typename F::Value;

    // rows x cols zero matrix.
    Matrix(F field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

    static Matrix identity(F field, std::size_t n) {
        Matrix m(std::move(field), n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = m.field_.one();
        return m;
    }

    // Convenience builder from integer literals (reduced into the field).
    static Matrix from_rows(F field, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r == 0 ? 0 : rows.begin()->size();
        Matrix m(std::move(field), r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) throw DimensionError("ragged row list in Matrix::from_rows");
            std::size_t j = 0;
            for (const auto v : row) m(i, j++) = m.field_.from_int(v);
            ++i;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const F& field() const { return field_; }

    const Value& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Value& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    bool is_zero() const {
        for (const auto& v : data_)
            if (!field_.is_zero(v)) return false;
        return true;
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!field_.eq((*this)(i, j), i == j ? field_.one() : field_.zero())) return false;
        return true;
    }

    Matrix transposed() const {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    // Copy of the sub-block starting at (r0, c0) with shape nr x nc.
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block exceeds matrix bounds");
        Matrix b(field_, nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }

    // Single column as a rows x 1 matrix.
    Matrix col(std::size_t j) const { return block(0, j, rows_, 1); }

    // --- elementary row operations (used by the elimination routines) -----

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    void scale_row(std::size_t r, const Value& s) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = field_.mul(s, (*this)(r, j));
    }

    // row[dst] += s * row[src]
    void add_scaled_row(std::size_t dst, std::size_t src, const Value& s) {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(dst, j) = field_.add((*this)(dst, j), field_.mul(s, (*this)(src, j)));
    }

private:
    F field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Value> data_;
};

template <FieldType F>
bool operator==(const Matrix<F>& a, const Matrix<F>& b) {
    if (!(a.field() == b.field()) || a.rows() != b.rows() || a.cols() != b.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a.field().eq(a(i, j), b(i, j))) return false;
    return true;
}

template <FieldType F>
bool operator!=(const Matrix<F>& a, const Matrix<F>& b) {
    return !(a == b);
}

namespace detail {

template <FieldType F>
void require_same_field(const Matrix<F>& a, const Matrix<F>& b) {
    if (!(a.field() == b.field())) throw FieldMismatchError("matrices live over different fields");
}

}  // namespace detail

template <FieldType F>
Matrix<F> operator+(const Matrix<F>& a, const Matrix<F>& b) {
    detail::require_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("shape mismatch in matrix sum");
    Matrix<F> c(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().add(a(i, j), b(i, j));
    return c;
}

template <FieldType F>
Matrix<F> operator-(const Matrix<F>& a, const Matrix<F>& b) {
    detail::require_same_field(a, b);
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("shape mismatch in matrix difference");
    Matrix<F> c(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().sub(a(i, j), b(i, j));
    return c;
}

template <FieldType F>
Matrix<F> operator-(const Matrix<F>& a) {
    Matrix<F> c(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a.field().neg(a(i, j));
    return c;
}

template <FieldType F>
Matrix<F> operator*(const Matrix<F>& a, const Matrix<F>& b) {
    detail::require_same_field(a, b);
    if (a.cols() != b.rows()) throw DimensionError("inner dimension mismatch in matrix product");
    const F& f = a.field();
    Matrix<F> c(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const auto& aik = a(i, k);
            if (f.is_zero(aik)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) = f.add(c(i, j), f.mul(aik, b(k, j)));
        }
    return c;
}

// Horizontal concatenation (a | b).
template <FieldType F>
Matrix<F> hcat(const Matrix<F>& a, const Matrix<F>& b) {
    detail::require_same_field(a, b);
    if (a.rows() != b.rows()) throw DimensionError("row count mismatch in hcat");
    Matrix<F> c(a.field(), a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
    }
    return c;
}

// Vertical concatenation (a on top of b).
template <FieldType F>
Matrix<F> vcat(const Matrix<F>& a, const Matrix<F>& b) {
    detail::require_same_field(a, b);
    if (a.cols() != b.cols()) throw DimensionError("column count mismatch in vcat");
    Matrix<F> c(a.field(), a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(a.rows() + i, j) = b(i, j);
    return c;
}

namespace detail {

// In-place reduction to reduced row echelon form.  Returns the pivot columns
// in increasing order.  If `transform` is non-null it must be the identity on
// entry; on exit transform * original == reduced.
template <FieldType F>
std::vector<std::size_t> rref_in_place(Matrix<F>& a, Matrix<F>* transform = nullptr) {
    const F& f = a.field();
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::size_t> pivots;
    std::size_t pr = 0;
    for (std::size_t c = 0; c < cols && pr < rows; ++c) {
        std::size_t sel = rows;
        for (std::size_t r = pr; r < rows; ++r)
            if (!f.is_zero(a(r, c))) {
                sel = r;
                break;
            }
        if (sel == rows) continue;
        a.swap_rows(pr, sel);
        if (transform) transform->swap_rows(pr, sel);
        if (!f.eq(a(pr, c), f.one())) {
            const auto s = f.inv(a(pr, c));
            a.scale_row(pr, s);
            if (transform) transform->scale_row(pr, s);
        }
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pr) continue;
            const auto v = a(r, c);
            if (f.is_zero(v)) continue;
            const auto s = f.neg(v);
            a.add_scaled_row(r, pr, s);
            if (transform) transform->add_scaled_row(r, pr, s);
        }
        pivots.push_back(c);
        ++pr;
    }
    return pivots;
}

}  // namespace detail

template <FieldType F>
std::size_t rank(const Matrix<F>& a) {
    Matrix<F> work = a;
    return detail::rref_in_place(work).size();
}

template <FieldType F>
Matrix<F> inverse(const Matrix<F>& a) {
    if (a.rows() != a.cols()) throw DimensionError("inverse of a non-square matrix");
    Matrix<F> work = a;
    Matrix<F> inv = Matrix<F>::identity(a.field(), a.rows());
    const auto pivots = detail::rref_in_place(work, &inv);
    if (pivots.size() != a.rows()) throw SingularMatrixError("matrix is singular");
    return inv;
}

// Reduced column echelon form with zero columns dropped: the unique canonical
// basis of the column span.  Pivots walk down distinct rows in increasing
// order, each pivot entry is 1 and is the only nonzero entry in its row.
// The result has rank(a) columns (possibly zero columns for a zero matrix).
template <FieldType F>
Matrix<F> reduced_column_echelon(const Matrix<F>& a) {
    Matrix<F> t = a.transposed();
    const auto pivots = detail::rref_in_place(t);
    // nonzero rows of the RREF are exactly the first pivots.size() rows
    return t.block(0, 0, pivots.size(), t.cols()).transposed();
}

// U * a * V = [[I_r, 0], [0, 0]] with U, V invertible.
template <FieldType F>
struct RankNormalForm {
    Matrix<F> u;
    Matrix<F> v;
    std::size_t rank;
};

template <FieldType F>
RankNormalForm<F> rank_normal_form(const Matrix<F>& a) {
    Matrix<F> r = a;
    Matrix<F> u = Matrix<F>::identity(a.field(), a.rows());
    const auto pivots = detail::rref_in_place(r, &u);
    // Column-reduce the RREF by row-reducing its transpose: w * r^T is the
    // RREF of r^T, which for an RREF input is exactly [[I_r, 0], [0, 0]].
    Matrix<F> rt = r.transposed();
    Matrix<F> w = Matrix<F>::identity(a.field(), a.cols());
    detail::rref_in_place(rt, &w);
    return RankNormalForm<F>{std::move(u), w.transposed(), pivots.size()};
}

// A reflexive generalized inverse: a * g * a == a and g * a * g == g.
// Built from the rank normal form, so it works over any exact field
// (no Gram-matrix trick, which breaks over finite fields).
template <FieldType F>
Matrix<F> generalized_inverse(const Matrix<F>& a) {
    const auto nf = rank_normal_form(a);
    // g = v * [[I_r, 0], [0, 0]] * u = v[:, :r] * u[:r, :]
    return nf.v.block(0, 0, a.cols(), nf.rank) * nf.u.block(0, 0, nf.rank, a.rows());
}

}  // namespace triblock
