// SPDX-License-Identifier: MIT
#pragma once

// Subspaces of K^d represented by explicit column bases, and the lattice
// operations the factorization algorithms are phrased in: kernels, direct
// sums, intersections, complements within a containing space, and a
// simultaneous ("double") complement.
//
// Determinism matters more than it may look: several results below are used
// as building blocks of matrix constructions whose exact entries are then
// asserted in regression tests.  Canonical operations (spanning bases,
// kernels, intersections) return the reduced-column-echelon basis, which
// depends only on the subspace.  Greedy operations (complements) depend on
// the presented basis order, which is why bases are kept exactly as given.

#include <cstddef>
#include <utility>
#include <vector>

#include "triblock/errors.hpp"
#include "triblock/matrix.hpp"

namespace triblock {

namespace detail {

// Incrementally maintained column echelon set.  Stored columns have strictly
// distinct leading rows and unit leading entries, but are not mutually
// reduced; reducing an incoming vector against them in increasing leading-row
// order is still exact because a column is zero above its leading row.
template <FieldType F>
class IncrementalEchelon {
public:
    IncrementalEchelon(F field, std::size_t ambient) : field_(std::move(field)), ambient_(ambient) {}

    std::size_t dim() const { return cols_.size(); }

    // Residual of v after elimination against the stored columns.
    std::vector<typename F::Value> reduce(std::vector<typename F::Value> v) const {
        for (std::size_t k = 0; k < cols_.size(); ++k) {
            const auto& c = cols_[k];
            const std::size_t lead = leads_[k];
            if (field_.is_zero(v[lead])) continue;
            const auto s = field_.neg(v[lead]);
            for (std::size_t i = lead; i < ambient_; ++i)
                v[i] = field_.add(v[i], field_.mul(s, c[i]));
        }
        return v;
    }

    // Reduce v and, if a nonzero residual remains, keep it.  Returns whether
    // the span grew.
    bool insert(std::vector<typename F::Value> v) {
        v = reduce(std::move(v));
        std::size_t lead = ambient_;
        for (std::size_t i = 0; i < ambient_; ++i)
            if (!field_.is_zero(v[i])) {
                lead = i;
                break;
            }
        if (lead == ambient_) return false;
        const auto s = field_.inv(v[lead]);
        for (std::size_t i = lead; i < ambient_; ++i) v[i] = field_.mul(s, v[i]);
        // keep columns ordered by leading row
        std::size_t pos = 0;
        while (pos < leads_.size() && leads_[pos] < lead) ++pos;
        cols_.insert(cols_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
        leads_.insert(leads_.begin() + static_cast<std::ptrdiff_t>(pos), lead);
        return true;
    }

private:
    F field_;
    std::size_t ambient_;
    std::vector<std::vector<typename F::Value>> cols_;
    std::vector<std::size_t> leads_;
};

template <FieldType F>
std::vector<typename F::Value> column_of(const Matrix<F>& m, std::size_t j) {
    std::vector<typename F::Value> v(m.rows(), m.field().zero());
    for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
    return v;
}

}  // namespace detail

// A subspace of K^(ambient) described by a basis, stored column-wise exactly
// as given (columns are checked for independence).
template <FieldType F>
class SubspaceBasis {
public:
    explicit SubspaceBasis(Matrix<F> basis) : basis_(std::move(basis)) {
        if (rank(basis_) != basis_.cols())
            throw PreconditionError("columns presented as a basis are linearly dependent");
    }

    // Canonical (reduced column echelon) basis of the column span of an
    // arbitrary generating set; the zero span yields an ambient x 0 basis.
    static SubspaceBasis spanning(const Matrix<F>& generators) {
        return SubspaceBasis(reduced_column_echelon(generators));
    }

    static SubspaceBasis full(F field, std::size_t ambient) {
        return SubspaceBasis(Matrix<F>::identity(std::move(field), ambient));
    }

    static SubspaceBasis trivial(F field, std::size_t ambient) {
        return SubspaceBasis(Matrix<F>(std::move(field), ambient, 0));
    }

    std::size_t ambient_dim() const { return basis_.rows(); }
    std::size_t dim() const { return basis_.cols(); }
    const Matrix<F>& basis() const { return basis_; }
    const F& field() const { return basis_.field(); }

    // Do all columns of v lie in this span?
    bool contains(const Matrix<F>& v) const {
        if (v.rows() != ambient_dim()) throw DimensionError("ambient dimension mismatch");
        return rank(hcat(basis_, v)) == dim();
    }

    bool contains(const SubspaceBasis& other) const { return contains(other.basis_); }

    bool same_span(const SubspaceBasis& other) const {
        return reduced_column_echelon(basis_) == reduced_column_echelon(other.basis_);
    }

private:
    Matrix<F> basis_;
};

// Canonical basis of { x : m * x = 0 }.  Stack m on top of an identity,
// column-reduce, and read the kernel off the columns whose top block
// vanished; the result is the reduced column echelon basis of the kernel.
template <FieldType F>
SubspaceBasis<F> kernel_basis(const Matrix<F>& m) {
    const std::size_t d = m.cols();
    Matrix<F> stacked = vcat(m, Matrix<F>::identity(m.field(), d));
    Matrix<F> e = reduced_column_echelon(stacked);
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < e.cols(); ++j) {
        bool top_zero = true;
        for (std::size_t i = 0; i < m.rows() && top_zero; ++i)
            if (!m.field().is_zero(e(i, j))) top_zero = false;
        if (top_zero) keep.push_back(j);
    }
    Matrix<F> k(m.field(), d, keep.size());
    for (std::size_t jj = 0; jj < keep.size(); ++jj)
        for (std::size_t i = 0; i < d; ++i) k(i, jj) = e(m.rows() + i, keep[jj]);
    return SubspaceBasis<F>(std::move(k));
}

// Concatenated basis (a | b); throws NotDirect if the sum is not direct.
template <FieldType F>
SubspaceBasis<F> direct_sum(const SubspaceBasis<F>& a, const SubspaceBasis<F>& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("ambient dimension mismatch in direct_sum");
    Matrix<F> joined = hcat(a.basis(), b.basis());
    if (rank(joined) != a.dim() + b.dim())
        throw NotDirect("subspace sum is not direct: the summands intersect nontrivially");
    return SubspaceBasis<F>(std::move(joined));
}

// Canonical basis of span(a) ∩ span(b) via the Zassenhaus stack: column-
// reduce [[A, B], [A, 0]]; columns whose top half vanished carry the
// intersection in their bottom half.  The input spans alone determine the
// stacked column span, so the output depends only on the two subspaces.
template <FieldType F>
SubspaceBasis<F> intersect(const SubspaceBasis<F>& a, const SubspaceBasis<F>& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("ambient dimension mismatch in intersect");
    const std::size_t d = a.ambient_dim();
    const F& f = a.field();
    Matrix<F> top = hcat(a.basis(), b.basis());
    Matrix<F> bottom = hcat(a.basis(), Matrix<F>(f, d, b.dim()));
    Matrix<F> e = reduced_column_echelon(vcat(top, bottom));
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < e.cols(); ++j) {
        bool top_zero = true;
        for (std::size_t i = 0; i < d && top_zero; ++i)
            if (!f.is_zero(e(i, j))) top_zero = false;
        if (top_zero) keep.push_back(j);
    }
    Matrix<F> k(f, d, keep.size());
    for (std::size_t jj = 0; jj < keep.size(); ++jj)
        for (std::size_t i = 0; i < d; ++i) k(i, jj) = e(d + i, keep[jj]);
    return SubspaceBasis<F>(std::move(k));
}

// Complement of span(b) inside span(a): greedily keep the columns of a's
// presented basis that grow the span of b, tracked with an incrementally
// updated echelon set (one O(dim * ambient) reduction per column, cubic
// overall).  Throws NotSubspaceOf unless span(b) <= span(a).
template <FieldType F>
SubspaceBasis<F> complement_within(const SubspaceBasis<F>& a, const SubspaceBasis<F>& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw DimensionError("ambient dimension mismatch in complement_within");
    if (rank(hcat(a.basis(), b.basis())) != a.dim())
        throw NotSubspaceOf("complement_within: second subspace is not contained in the first");
    const F& f = a.field();
    detail::IncrementalEchelon<F> ech(f, a.ambient_dim());
    for (std::size_t j = 0; j < b.dim(); ++j) ech.insert(detail::column_of(b.basis(), j));
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < a.dim(); ++j)
        if (ech.insert(detail::column_of(a.basis(), j))) keep.push_back(j);
    Matrix<F> c(f, a.ambient_dim(), keep.size());
    for (std::size_t jj = 0; jj < keep.size(); ++jj)
        for (std::size_t i = 0; i < a.ambient_dim(); ++i) c(i, jj) = a.basis()(i, keep[jj]);
    return SubspaceBasis<F>(std::move(c));
}

// Reference implementation of complement_within used as a cross-check in
// tests: re-rank from scratch for every candidate column (quartic).
template <FieldType F>
SubspaceBasis<F> complement_within_naive(const SubspaceBasis<F>& a, const SubspaceBasis<F>& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw DimensionError("ambient dimension mismatch in complement_within");
    if (rank(hcat(a.basis(), b.basis())) != a.dim())
        throw NotSubspaceOf("complement_within: second subspace is not contained in the first");
    Matrix<F> acc = b.basis();
    Matrix<F> kept(a.field(), a.ambient_dim(), 0);
    for (std::size_t j = 0; j < a.dim(); ++j) {
        Matrix<F> cand = hcat(acc, a.basis().col(j));
        if (rank(cand) > acc.cols()) {
            acc = std::move(cand);
            kept = hcat(kept, a.basis().col(j));
        }
    }
    return SubspaceBasis<F>(std::move(kept));
}

// Simultaneous complement: a basis S with span(S) ⊕ span(a) = span(c) and
// span(S) ∩ span(b) = {0}.  Requires span(a), span(b) <= span(c) and
// dim a >= dim b.  Construction: complement both spans of the pairwise
// intersection, pair up the leftover directions of a and b by summing them,
// and pad with a complement of span(a)+span(b) inside span(c).
template <FieldType F>
SubspaceBasis<F> double_complement(const SubspaceBasis<F>& a, const SubspaceBasis<F>& b,
                                   const SubspaceBasis<F>& c) {
    if (a.ambient_dim() != b.ambient_dim() || a.ambient_dim() != c.ambient_dim())
        throw DimensionError("ambient dimension mismatch in double_complement");
    if (!c.contains(a)) throw NotSubspaceOf("double_complement: first subspace is not contained in the third");
    if (!c.contains(b)) throw NotSubspaceOf("double_complement: second subspace is not contained in the third");
    if (a.dim() < b.dim())
        throw PreconditionError("double_complement requires dim(first) >= dim(second)");
    const SubspaceBasis<F> meet = intersect(a, b);
    const SubspaceBasis<F> p = complement_within(a, meet);
    const SubspaceBasis<F> q = complement_within(b, meet);
    // dim p >= dim q; pair the first dim(q) columns of p with q
    Matrix<F> paired = p.basis().block(0, 0, a.ambient_dim(), q.dim()) + q.basis();
    const SubspaceBasis<F> rest =
        complement_within(c, SubspaceBasis<F>::spanning(hcat(a.basis(), b.basis())));
    return SubspaceBasis<F>(hcat(rest.basis(), paired));
}

}  // namespace triblock
