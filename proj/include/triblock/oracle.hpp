// SPDX-License-Identifier: MIT
#pragma once

// Independent brute-force ground truth over GF(2).
//
// Everything here is deliberately dumb: exhaustive enumeration plus the
// module-1 rank/inverse primitives, and nothing from subspace.hpp or
// decompose.hpp.  The constructive algorithms are certified against these
// routines, so the two code paths must stay independent.

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "triblock/blocked.hpp"
#include "triblock/errors.hpp"
#include "triblock/matrix.hpp"

namespace triblock {

struct OracleResult {
    std::size_t min_sum = 0;
    // Pareto-minimal (rank L, rank R) pairs, sorted by rank L ascending.
    std::vector<std::pair<std::size_t, std::size_t>> pareto_set;
    // Lowest-encoded admissible witness L for each Pareto pair (same order).
    std::vector<Matrix<F2>> witnesses;
    // Every achievable (rank L, rank R) pair, sorted.
    std::vector<std::pair<std::size_t, std::size_t>> achievable;
};

namespace detail {

// Decode a row-major bit pattern into an r x c matrix (bit i*c+j -> entry i,j).
inline Matrix<F2> matrix_from_code(std::uint64_t code, std::size_t r, std::size_t c) {
    Matrix<F2> m(F2{}, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = static_cast<std::uint8_t>((code >> (i * c + j)) & 1);
    return m;
}

}  // namespace detail

// Exhaustive minimization of rank L + rank(P2 - L*P4) over all admissible L
// (those with P1 - L*P3 invertible).  Candidates are enumerated as ascending
// row-major bit patterns, so witness selection is reproducible.
inline OracleResult min_offdiag_bruteforce(const BlockedMatrix<F2>& bm) {
    const std::size_t m = bm.m(), n = bm.n();
    if (n * m > 20) throw TooLarge("brute force beyond 2^20 candidate matrices");
    const Matrix<F2> p1 = bm.p1(), p2 = bm.p2(), p3 = bm.p3(), p4 = bm.p4();
    // achieved[(l, r)] = lowest code achieving it; flat (n+1) x (m+1) table
    const std::uint64_t none = ~std::uint64_t{0};
    std::vector<std::uint64_t> first_code((n + 1) * (m + 1), none);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (n * m)); ++code) {
        const Matrix<F2> L = detail::matrix_from_code(code, n, m);
        if (rank(p1 - L * p3) != n) continue;  // not admissible
        const std::size_t l = rank(L);
        const std::size_t r = rank(p2 - L * p4);
        auto& slot = first_code[l * (m + 1) + r];
        if (slot == none) slot = code;
    }
    OracleResult res;
    res.min_sum = n + m + 1;
    for (std::size_t l = 0; l <= n; ++l)
        for (std::size_t r = 0; r <= m; ++r)
            if (first_code[l * (m + 1) + r] != none) {
                res.achievable.emplace_back(l, r);
                res.min_sum = std::min(res.min_sum, l + r);
            }
    for (const auto& [l, r] : res.achievable) {
        bool dominated = false;
        for (const auto& [l2, r2] : res.achievable)
            if ((l2 <= l && r2 < r) || (l2 < l && r2 <= r)) {
                dominated = true;
                break;
            }
        if (!dominated) {
            res.pareto_set.emplace_back(l, r);
            res.witnesses.push_back(detail::matrix_from_code(first_code[l * (m + 1) + r], n, m));
        }
    }
    return res;
}

// Number of invertible k x k matrices over GF(2): prod_{i<k} (2^k - 2^i).
inline std::uint64_t gl_order(std::size_t k) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < k; ++i) count *= (std::uint64_t{1} << k) - (std::uint64_t{1} << i);
    return count;
}

// Visit every invertible k x k matrix over GF(2) exactly once, in ascending
// row-major bit-pattern order.
template <typename Fn>
void enumerate_gl(std::size_t k, Fn&& fn) {
    if (k > 5) throw TooLarge("full GL enumeration beyond k = 5");
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (k * k)); ++code) {
        Matrix<F2> m = detail::matrix_from_code(code, k, k);
        if (rank(m) == k) fn(m);
    }
}

// Membership test by direct rank comparison, independent of subspace.hpp:
// v lies in the column span of `basis` iff appending it does not raise the rank.
inline bool subspace_membership_oracle(const Matrix<F2>& basis, const Matrix<F2>& v) {
    if (basis.rows() > 24) throw TooLarge("membership oracle beyond ambient dimension 24");
    if (v.rows() != basis.rows() || v.cols() != 1)
        throw DimensionError("membership oracle expects a single column in the same ambient space");
    return rank(hcat(basis, v)) == rank(basis);
}

// Uniform random matrix / invertible matrix over GF(2) (rejection sampling);
// deterministic given the generator state.
inline Matrix<F2> random_f2_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
    Matrix<F2> m(F2{}, r, c);
    std::uint64_t bits = 0;
    int left = 0;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            if (left == 0) {
                bits = rng();
                left = 64;
            }
            m(i, j) = static_cast<std::uint8_t>(bits & 1);
            bits >>= 1;
            --left;
        }
    return m;
}

inline Matrix<F2> random_invertible_f2(std::size_t k, std::mt19937_64& rng) {
    for (;;) {
        Matrix<F2> m = random_f2_matrix(k, k, rng);
        if (rank(m) == k) return m;
    }
}

}  // namespace triblock
