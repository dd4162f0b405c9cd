// SPDX-License-Identifier: MIT
#pragma once

// Factorization of an invertible blocked matrix
//
//     P = [[P4, P3], [P2, P1]]
//       = [[I, 0], [L, I]] * [[C4, C3], [0, C1]] * [[I, 0], [R, I]]
//
// minimizing rank(L) + rank(R).  The middle factor always reproduces
// C3 = P3, and for any admissible L (one making C1 = P1 - L*P3 invertible)
// the completion is forced:
//
//     C1 = P1 - L*P3,   R = C1^-1 * (P2 - L*P4),   C4 = P4 - P3*R.
//
// Rank profile (p1..p4 = ranks of the blocks) yields hard lower bounds
//     rank L >= n - p1,   rank R >= m - p4,
//     rank L + rank R >= max(p2, m + n - p1 - p4),
// all of which are attained: construct_L_case1/2 build an L with minimal
// rank(L) = n - p1 (two constructions split on which term of the max is
// active), and rank_exchange walks the achievable frontier by trading one
// unit of rank R for one unit of rank L.

#include <cstddef>
#include <string>
#include <utility>

#include "triblock/blocked.hpp"
#include "triblock/errors.hpp"
#include "triblock/matrix.hpp"
#include "triblock/subspace.hpp"

namespace triblock {

template <FieldType F>
struct Decomposition {
    Matrix<F> L;   // n x m
    Matrix<F> C4;  // m x m, invertible
    Matrix<F> C3;  // m x n, equals P3
    Matrix<F> C1;  // n x n, invertible
    Matrix<F> R;   // n x m
    std::size_t rank_L = 0;
    std::size_t rank_R = 0;
};

// A point on the minimal-sum frontier: rank L = l, rank R = r.
struct ParetoTarget {
    std::size_t l = 0;
    std::size_t r = 0;
};

// Forced completion for a given L; throws SingularCore if P1 - L*P3 is
// singular (no factorization with this L exists).
template <FieldType F>
Decomposition<F> complete_decomposition(const BlockedMatrix<F>& bm, const Matrix<F>& L) {
    if (L.rows() != bm.n() || L.cols() != bm.m())
        throw DimensionError("L must be n x m for the given block split");
    if (!(L.field() == bm.field())) throw FieldMismatchError("L lives over a different field");
    const Matrix<F> c1 = bm.p1() - L * bm.p3();
    if (rank(c1) != bm.n())
        throw SingularCore("P1 - L*P3 is singular: no factorization exists for this L");
    const Matrix<F> r = inverse(c1) * (bm.p2() - L * bm.p4());
    const Matrix<F> c4 = bm.p4() - bm.p3() * r;
    Decomposition<F> d{L, c4, bm.p3(), c1, r, rank(L), rank(r)};
    return d;
}

namespace detail {

// Shared pieces of the two L constructions.
template <FieldType F>
struct ConstructionContext {
    Matrix<F> p1, p2, p3, p4;
    SubspaceBasis<F> ker_p4, ker_p2, ker_p1;
    SubspaceBasis<F> p2_ker_p4;  // image of ker(P4) under P2 (injective: columns [P4; P2] are independent)
    SubspaceBasis<F> p3_ker_p1;  // image of ker(P1) under P3
    SubspaceBasis<F> p4_ker_p2;  // image of ker(P2) under P4
    SubspaceBasis<F> x2, x3;     // im(P4) = P4*ker(P2) (+) X2 (+) X3 with X2 = P3*ker(P1) ∩ im(P4)
    Matrix<F> p4_pinv, p2_pinv;

    explicit ConstructionContext(const BlockedMatrix<F>& bm)
        : p1(bm.p1()),
          p2(bm.p2()),
          p3(bm.p3()),
          p4(bm.p4()),
          ker_p4(kernel_basis(p4)),
          ker_p2(kernel_basis(p2)),
          ker_p1(kernel_basis(p1)),
          p2_ker_p4(Matrix<F>(p2 * ker_p4.basis())),
          p3_ker_p1(Matrix<F>(p3 * ker_p1.basis())),
          p4_ker_p2(Matrix<F>(p4 * ker_p2.basis())),
          x2(intersect(p3_ker_p1, SubspaceBasis<F>::spanning(p4))),
          x3(complement_within(SubspaceBasis<F>::spanning(p4), direct_sum(p4_ker_p2, x2))),
          p4_pinv(generalized_inverse(p4)),
          p2_pinv(generalized_inverse(p2)) {}

    // span(ker P4 | P4^+ * W) = full preimage of W under P4, for W <= im(P4).
    SubspaceBasis<F> p4_preimage(const Matrix<F>& w) const {
        return SubspaceBasis<F>::spanning(hcat(ker_p4.basis(), p4_pinv * w));
    }

    SubspaceBasis<F> p2_preimage(const Matrix<F>& w) const {
        return SubspaceBasis<F>::spanning(hcat(ker_p2.basis(), p2_pinv * w));
    }
};

// Assemble L from matched column groups: L maps the columns of `domain`
// (an invertible m x m matrix) to the columns of `image` (n x m).
template <FieldType F>
Matrix<F> solve_column_map(const Matrix<F>& image, const Matrix<F>& domain) {
    return image * inverse(domain);
}

}  // namespace detail

// Minimal-rank L when p2 <= m + n - p1 - p4 (the kernel-driven regime).
template <FieldType F>
Matrix<F> construct_L_case1(const BlockedMatrix<F>& bm) {
    const std::size_t m = bm.m(), n = bm.n();
    const RankProfile prof = rank_profile(bm);
    if (prof.p2 > m + n - prof.p1 - prof.p4)
        throw CaseMismatch("construct_L_case1 requires p2 <= m + n - p1 - p4");
    const F& f = bm.field();
    detail::ConstructionContext<F> ctx(bm);

    // Y1: a complement of P2*ker(P4) in im(P2) avoiding im(P1) ∩ im(P2).
    const SubspaceBasis<F> im_p2 = SubspaceBasis<F>::spanning(ctx.p2);
    const SubspaceBasis<F> p1_cap_p2 =
        intersect(SubspaceBasis<F>::spanning(ctx.p1), im_p2);
    const SubspaceBasis<F> y1 = double_complement(ctx.p2_ker_p4, p1_cap_p2, im_p2);

    // Y: extend Y1 to a complement of im(P1) "as far as possible".
    const SubspaceBasis<F> full_n = SubspaceBasis<F>::full(f, n);
    const SubspaceBasis<F> y_ext = complement_within(
        full_n, SubspaceBasis<F>::spanning(hcat(y1.basis(), ctx.p1)));
    const SubspaceBasis<F> y = direct_sum(y1, y_ext);

    // X1: directions of P3*ker(P1) outside im(P4); X4: what is left of K^m.
    const SubspaceBasis<F> x1 = complement_within(ctx.p3_ker_p1, ctx.x2);
    const SubspaceBasis<F> full_m = SubspaceBasis<F>::full(f, m);
    const SubspaceBasis<F> x4 = complement_within(
        full_m, SubspaceBasis<F>::spanning(hcat(ctx.p4, ctx.p3_ker_p1.basis())));

    // F: the graph subspace tying X2 (+) X3 to Y1 through P4 and P2.
    const SubspaceBasis<F> fsub =
        intersect(ctx.p4_preimage(hcat(ctx.x2.basis(), ctx.x3.basis())), ctx.p2_preimage(y1.basis()));

    // Y2: complement in Y of the part of Y1 already produced by X2.
    const SubspaceBasis<F> g = intersect(ctx.p4_preimage(ctx.x2.basis()), fsub);
    const SubspaceBasis<F> y2 =
        complement_within(y, SubspaceBasis<F>(Matrix<F>(ctx.p2 * g.basis())));

    const Matrix<F> p4f = ctx.p4 * fsub.basis();
    const Matrix<F> p2f = ctx.p2 * fsub.basis();
    const Matrix<F> domain = hcat(hcat(p4f, x1.basis()), hcat(ctx.p4_ker_p2.basis(), x4.basis()));
    const std::size_t zero_cols = domain.cols() - p2f.cols() - y2.dim();
    const Matrix<F> image = hcat(hcat(p2f, y2.basis()), Matrix<F>(f, n, zero_cols));
    return detail::solve_column_map(image, domain);
}

// Minimal-rank L when p2 > m + n - p1 - p4 (the image-driven regime).
template <FieldType F>
Matrix<F> construct_L_case2(const BlockedMatrix<F>& bm) {
    const std::size_t m = bm.m(), n = bm.n();
    const RankProfile prof = rank_profile(bm);
    if (prof.p2 <= m + n - prof.p1 - prof.p4)
        throw CaseMismatch("construct_L_case2 requires p2 > m + n - p1 - p4");
    const F& f = bm.field();
    detail::ConstructionContext<F> ctx(bm);

    // Y: a complement of im(P1) ∩ im(P2) in im(P2) avoiding P2*ker(P4).
    const SubspaceBasis<F> im_p2 = SubspaceBasis<F>::spanning(ctx.p2);
    const SubspaceBasis<F> p1_cap_p2 =
        intersect(SubspaceBasis<F>::spanning(ctx.p1), im_p2);
    const SubspaceBasis<F> y = double_complement(p1_cap_p2, ctx.p2_ker_p4, im_p2);

    // F: as in case 1 but tied to all of Y.
    const SubspaceBasis<F> fsub =
        intersect(ctx.p4_preimage(hcat(ctx.x2.basis(), ctx.x3.basis())), ctx.p2_preimage(y.basis()));
    const Matrix<F> p4f = ctx.p4 * fsub.basis();
    const Matrix<F> p2f = ctx.p2 * fsub.basis();
    const SubspaceBasis<F> t = SubspaceBasis<F>::spanning(p4f);

    // X1': directions of P3*ker(P1) not already covered by T ∩ X2.
    const SubspaceBasis<F> t_cap_x2 = intersect(t, ctx.x2);
    const SubspaceBasis<F> x1p = complement_within(ctx.p3_ker_p1, t_cap_x2);

    const SubspaceBasis<F> full_m = SubspaceBasis<F>::full(f, m);
    const SubspaceBasis<F> x4 = complement_within(
        full_m,
        SubspaceBasis<F>::spanning(hcat(hcat(x1p.basis(), p4f), ctx.p4_ker_p2.basis())));

    // Y2': complement in Y of the image of T ∩ X2.
    const SubspaceBasis<F> g = intersect(fsub, ctx.p4_preimage(ctx.x2.basis()));
    const SubspaceBasis<F> y2p =
        complement_within(y, SubspaceBasis<F>(Matrix<F>(ctx.p2 * g.basis())));

    const Matrix<F> domain = hcat(hcat(p4f, x1p.basis()), hcat(ctx.p4_ker_p2.basis(), x4.basis()));
    const std::size_t zero_cols = domain.cols() - p2f.cols() - y2p.dim();
    const Matrix<F> image = hcat(hcat(p2f, y2p.basis()), Matrix<F>(f, n, zero_cols));
    return detail::solve_column_map(image, domain);
}

// One step along the frontier: given an admissible L with minimal rank sum,
// return L + dL with rank(L + dL) = rank(L) + 1 and rank R one lower.
// Throws AtBound once rank R sits at its lower bound m - p4.
template <FieldType F>
Matrix<F> rank_exchange(const BlockedMatrix<F>& bm, const Matrix<F>& L) {
    const std::size_t m = bm.m(), n = bm.n();
    if (L.rows() != n || L.cols() != m)
        throw DimensionError("L must be n x m for the given block split");
    const Matrix<F> core = bm.p1() - L * bm.p3();
    if (rank(core) != n)
        throw SingularCore("P1 - L*P3 is singular: not an admissible L");
    const Matrix<F> rem = bm.p2() - L * bm.p4();  // = C1 * R
    const std::size_t r_rank = rank(rem);
    const RankProfile prof = rank_profile(bm);
    if (r_rank == m - prof.p4)
        throw AtBound("rank R already equals its lower bound m - p4 = " +
                      std::to_string(m - prof.p4));
    if (rank(L) + r_rank != prof.p2)
        throw PreconditionError("rank exchange requires rank L + rank R == p2");

    const F& f = bm.field();
    const SubspaceBasis<F> k = kernel_basis(rem);
    const Matrix<F> c = bm.p4() - bm.p3() * inverse(core) * rem;  // the C4 of this L; invertible
    const Matrix<F> p4k = bm.p4() * k.basis();

    // Pick z completing ker(rem) (+) ker(P4) to K^m while avoiding C^-1*P4*ker(rem).
    const SubspaceBasis<F> avoid(Matrix<F>(inverse(c) * p4k));
    const SubspaceBasis<F> zspace =
        double_complement(direct_sum(k, kernel_basis(bm.p4())), avoid, SubspaceBasis<F>::full(f, m));
    const Matrix<F> z = zspace.basis().col(0);

    const Matrix<F> cz = c * z;
    const Matrix<F> p4z = bm.p4() * z;
    const Matrix<F> reached = hcat(p4k, p4z);
    Matrix<F> ext(f, m, 0);
    if (rank(hcat(reached, cz)) == rank(reached)) {
        ext = complement_within(SubspaceBasis<F>::full(f, m), SubspaceBasis<F>::spanning(reached))
                  .basis();
    } else {
        const Matrix<F> a = cz - p4z;
        const Matrix<F> rest =
            complement_within(SubspaceBasis<F>::full(f, m), SubspaceBasis<F>::spanning(hcat(reached, a)))
                .basis();
        ext = hcat(rest, a);
    }

    const Matrix<F> domain = hcat(hcat(p4z, p4k), ext);
    Matrix<F> image = hcat(rem * z, Matrix<F>(f, n, m - 1));
    return L + detail::solve_column_map(image, domain);
}

// Optimal factorization: minimal rank(L) = n - p1 and minimal sum.
template <FieldType F>
Decomposition<F> decompose_optimal(const BlockedMatrix<F>& bm) {
    const std::size_t m = bm.m(), n = bm.n();
    if (m == 0 || n == 0)  // off-diagonal blocks are empty; L = R = 0 works
        return complete_decomposition(bm, Matrix<F>(bm.field(), n, m));
    const RankProfile prof = rank_profile(bm);
    const Matrix<F> L = prof.p2 <= m + n - prof.p1 - prof.p4 ? construct_L_case1(bm)
                                                             : construct_L_case2(bm);
    return complete_decomposition(bm, L);
}

// Factorization at a chosen frontier point; throws InfeasibleTarget (naming
// the violated bound) if the target is not on the frontier.
template <FieldType F>
Decomposition<F> decompose_pareto(const BlockedMatrix<F>& bm, const ParetoTarget& target) {
    const LowerBounds b = lower_bounds(bm);
    if (target.l < b.l_min)
        throw InfeasibleTarget("target rank L = " + std::to_string(target.l) +
                               " violates the bound rank L >= n - p1 = " + std::to_string(b.l_min));
    if (target.r < b.r_min)
        throw InfeasibleTarget("target rank R = " + std::to_string(target.r) +
                               " violates the bound rank R >= m - p4 = " + std::to_string(b.r_min));
    if (target.l + target.r != b.sum_min)
        throw InfeasibleTarget(
            "target rank sum = " + std::to_string(target.l + target.r) +
            " is off the frontier rank L + rank R = max(p2, m+n-p1-p4) = " +
            std::to_string(b.sum_min));
    Decomposition<F> d = decompose_optimal(bm);
    Matrix<F> L = d.L;
    for (std::size_t step = d.rank_L; step < target.l; ++step) L = rank_exchange(bm, L);
    return complete_decomposition(bm, L);
}

// --- equivalent factorization shapes --------------------------------------

template <FieldType F>
struct Deco4 {
    Matrix<F> left;    // [[I, 0], [L, C1]]
    Matrix<F> middle;  // [[C4, C3], [0, I]]
    Matrix<F> right;   // [[I, 0], [R, I]]
};

template <FieldType F>
struct Deco5 {
    Matrix<F> left;   // [[C4, C3], [L*C4, P1]]
    Matrix<F> right;  // [[I, 0], [R, I]]
};

template <FieldType F>
Deco4<F> to_deco4(const Decomposition<F>& d) {
    const F& f = d.L.field();
    const std::size_t n = d.L.rows(), m = d.L.cols();
    const Matrix<F> im = Matrix<F>::identity(f, m);
    const Matrix<F> in = Matrix<F>::identity(f, n);
    const Matrix<F> zmn(f, m, n);
    return Deco4<F>{assemble_blocks(im, zmn, d.L, d.C1), assemble_blocks(d.C4, d.C3, Matrix<F>(f, n, m), in),
                    assemble_blocks(im, zmn, d.R, in)};
}

template <FieldType F>
Deco5<F> to_deco5(const Decomposition<F>& d) {
    const F& f = d.L.field();
    const std::size_t n = d.L.rows(), m = d.L.cols();
    const Matrix<F> p1 = d.L * d.C3 + d.C1;  // reassembled bottom-right block
    return Deco5<F>{assemble_blocks(d.C4, d.C3, Matrix<F>(d.L * d.C4), p1),
                    assemble_blocks(Matrix<F>::identity(f, m), Matrix<F>(f, m, n), d.R,
                                    Matrix<F>::identity(f, n))};
}

// --- verification ----------------------------------------------------------

struct VerificationReport {
    bool shapes_ok = false;       // all five blocks have the right shapes and field
    bool product_ok = false;      // the three factors multiply back to P
    bool c1_invertible = false;
    bool c4_invertible = false;
    bool ranks_declared_ok = false;  // stored rank_L/rank_R match the matrices
    std::size_t rank_L = 0;
    std::size_t rank_R = 0;
    std::size_t rank_C3 = 0;
    RankProfile profile;
    LowerBounds bounds;
    bool c3_rank_ok = false;   // rank C3 == p3
    bool l_bound_ok = false;   // rank L >= n - p1
    bool r_bound_ok = false;   // rank R >= m - p4
    bool sum_p2_ok = false;    // rank L + rank R >= p2
    bool sum_bound_ok = false; // rank L + rank R >= max(p2, m+n-p1-p4)
    bool optimal = false;      // rank L + rank R == max(p2, m+n-p1-p4)

    bool bounds_ok() const { return c3_rank_ok && l_bound_ok && r_bound_ok && sum_p2_ok && sum_bound_ok; }
    bool valid() const {
        return shapes_ok && product_ok && c1_invertible && c4_invertible && ranks_declared_ok &&
               bounds_ok();
    }
};

template <FieldType F>
VerificationReport verify_decomposition(const BlockedMatrix<F>& bm, const Decomposition<F>& d) {
    const std::size_t m = bm.m(), n = bm.n();
    VerificationReport rep;
    rep.profile = rank_profile(bm);
    rep.bounds = lower_bounds(rep.profile, m, n);
    rep.shapes_ok = d.L.rows() == n && d.L.cols() == m && d.C4.rows() == m && d.C4.cols() == m &&
                    d.C3.rows() == m && d.C3.cols() == n && d.C1.rows() == n && d.C1.cols() == n &&
                    d.R.rows() == n && d.R.cols() == m && d.L.field() == bm.field();
    if (!rep.shapes_ok) return rep;
    const F& f = bm.field();
    const Matrix<F> left = assemble_blocks(Matrix<F>::identity(f, m), Matrix<F>(f, m, n), d.L,
                                           Matrix<F>::identity(f, n));
    const Matrix<F> middle = assemble_blocks(d.C4, d.C3, Matrix<F>(f, n, m), d.C1);
    const Matrix<F> right = assemble_blocks(Matrix<F>::identity(f, m), Matrix<F>(f, m, n), d.R,
                                            Matrix<F>::identity(f, n));
    rep.product_ok = left * middle * right == bm.matrix();
    rep.c1_invertible = rank(d.C1) == n;
    rep.c4_invertible = rank(d.C4) == m;
    rep.rank_L = rank(d.L);
    rep.rank_R = rank(d.R);
    rep.rank_C3 = rank(d.C3);
    rep.ranks_declared_ok = rep.rank_L == d.rank_L && rep.rank_R == d.rank_R;
    rep.c3_rank_ok = rep.rank_C3 == rep.profile.p3;
    rep.l_bound_ok = rep.rank_L >= rep.bounds.l_min;
    rep.r_bound_ok = rep.rank_R >= rep.bounds.r_min;
    rep.sum_p2_ok = rep.rank_L + rep.rank_R >= rep.profile.p2;
    rep.sum_bound_ok = rep.rank_L + rep.rank_R >= rep.bounds.sum_min;
    rep.optimal = rep.rank_L + rep.rank_R == rep.bounds.sum_min;
    return rep;
}

}  // namespace triblock
