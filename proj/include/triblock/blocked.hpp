// SPDX-License-Identifier: MIT
#pragma once

// An invertible square matrix with a designated 2x2 block split and the rank
// data attached to it.  Block naming convention used throughout:
//
//         m cols   n cols
//       +--------+--------+
//  m    |   P4   |   P3   |
//       +--------+--------+
//  n    |   P2   |   P1   |
//       +--------+--------+
//
// i.e. P1 is the bottom-right n x n block and P4 the top-left m x m block.
// The numbering follows the factorization P = T_lower * M * T'_lower where
// the middle factor reproduces P3 exactly and P1 - L*P3 appears as its
// bottom-right block; see decompose.hpp.

#include <algorithm>
#include <cstddef>
#include <utility>

#include "triblock/errors.hpp"
#include "triblock/matrix.hpp"

namespace triblock {

struct RankProfile {
    std::size_t p1 = 0;  // rank of the n x n block P1
    std::size_t p2 = 0;  // rank of the n x m block P2
    std::size_t p3 = 0;  // rank of the m x n block P3
    std::size_t p4 = 0;  // rank of the m x m block P4

    bool operator==(const RankProfile&) const = default;
};

// Lower bounds every factorization of a given blocked matrix must satisfy.
struct LowerBounds {
    std::size_t c3_rank = 0;  // rank of the middle factor's off block: exactly p3
    std::size_t l_min = 0;    // rank L   >= n - p1
    std::size_t r_min = 0;    // rank R   >= m - p4
    std::size_t sum_min = 0;  // rank L + rank R >= max(p2, m + n - p1 - p4)

    bool operator==(const LowerBounds&) const = default;
};

template <FieldType F>
class BlockedMatrix {
public:
    using Field = F;

    // Takes ownership of an invertible (m+n) x (m+n) matrix.
    BlockedMatrix(Matrix<F> p, std::size_t m, std::size_t n)
        : p_(std::move(p)), m_(m), n_(n) {
        if (m_ + n_ == 0) throw DimensionError("blocked matrix must have positive size");
        if (p_.rows() != p_.cols()) throw DimensionError("blocked matrix must be square");
        if (p_.rows() != m_ + n_)
            throw DimensionError("block split does not add up to the matrix size");
        if (rank(p_) != m_ + n_) throw SingularMatrixError("blocked matrix is singular");
    }

    std::size_t m() const { return m_; }
    std::size_t n() const { return n_; }
    std::size_t size() const { return m_ + n_; }
    const Matrix<F>& matrix() const { return p_; }
    const F& field() const { return p_.field(); }

    Matrix<F> p1() const { return p_.block(m_, m_, n_, n_); }
    Matrix<F> p2() const { return p_.block(m_, 0, n_, m_); }
    Matrix<F> p3() const { return p_.block(0, m_, m_, n_); }
    Matrix<F> p4() const { return p_.block(0, 0, m_, m_); }

private:
    Matrix<F> p_;
    std::size_t m_;
    std::size_t n_;
};

// Assemble a blocked matrix from its four blocks (shapes checked by the
// concatenations and the BlockedMatrix constructor).
template <FieldType F>
Matrix<F> assemble_blocks(const Matrix<F>& p4, const Matrix<F>& p3, const Matrix<F>& p2,
                          const Matrix<F>& p1) {
    return vcat(hcat(p4, p3), hcat(p2, p1));
}

template <FieldType F>
RankProfile rank_profile(const BlockedMatrix<F>& bm) {
    return RankProfile{rank(bm.p1()), rank(bm.p2()), rank(bm.p3()), rank(bm.p4())};
}

inline LowerBounds lower_bounds(const RankProfile& profile, std::size_t m, std::size_t n) {
    if (profile.p1 > n || profile.p4 > m)
        throw DimensionError("rank profile inconsistent with the block split");
    LowerBounds b;
    b.c3_rank = profile.p3;
    b.l_min = n - profile.p1;
    b.r_min = m - profile.p4;
    b.sum_min = std::max(profile.p2, (m + n) - profile.p1 - profile.p4);
    return b;
}

template <FieldType F>
LowerBounds lower_bounds(const BlockedMatrix<F>& bm) {
    return lower_bounds(rank_profile(bm), bm.m(), bm.n());
}

}  // namespace triblock
