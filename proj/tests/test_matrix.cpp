// SPDX-License-Identifier: MIT
#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "triblock/matrix.hpp"
#include "triblock/oracle.hpp"

using namespace triblock;

namespace {

// Random matrix with small integer entries, usable over any field.
template <FieldType F>
Matrix<F> random_matrix(F field, std::size_t r, std::size_t c, std::mt19937_64& rng) {
    Matrix<F> m(field, r, c);
    std::uniform_int_distribution<std::int64_t> dist(-4, 4);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = field.from_int(dist(rng));
    return m;
}

}  // namespace

TEST_CASE("construction and accessors", "[matrix]") {
    F2 f;
    Matrix<F2> z(f, 2, 3);
    CHECK(z.rows() == 2);
    CHECK(z.cols() == 3);
    CHECK(z.is_zero());

    auto id = Matrix<F2>::identity(f, 3);
    CHECK(id.is_identity());
    CHECK_FALSE(id.is_zero());

    auto m = Matrix<F2>::from_rows(f, {{1, 0, 1}, {0, 1, 1}});
    CHECK(f.eq(m(0, 2), f.one()));
    CHECK(f.eq(m(1, 0), f.zero()));
    CHECK_THROWS_AS(Matrix<F2>::from_rows(f, {{1, 0}, {1}}), DimensionError);

    CHECK(m.transposed().transposed() == m);
    CHECK(m.block(0, 1, 2, 2) == Matrix<F2>::from_rows(f, {{0, 1}, {1, 1}}));
    CHECK_THROWS_AS(m.block(0, 2, 1, 2), DimensionError);
    CHECK(m.col(2) == Matrix<F2>::from_rows(f, {{1}, {1}}));
}

TEST_CASE("arithmetic over the prime field", "[matrix]") {
    Fp f(5);
    auto a = Matrix<Fp>::from_rows(f, {{1, 2}, {3, 4}});
    auto b = Matrix<Fp>::from_rows(f, {{2, 0}, {1, 3}});
    CHECK(a + b == Matrix<Fp>::from_rows(f, {{3, 2}, {4, 2}}));
    CHECK(a - b == Matrix<Fp>::from_rows(f, {{4, 2}, {2, 1}}));
    CHECK(-a == Matrix<Fp>::from_rows(f, {{4, 3}, {2, 1}}));
    CHECK(a * b == Matrix<Fp>::from_rows(f, {{4, 1}, {0, 2}}));
    CHECK(a * Matrix<Fp>::identity(f, 2) == a);
    CHECK(hcat(a, b) == Matrix<Fp>::from_rows(f, {{1, 2, 2, 0}, {3, 4, 1, 3}}));
    CHECK(vcat(a, b) == Matrix<Fp>::from_rows(f, {{1, 2}, {3, 4}, {2, 0}, {1, 3}}));

    auto wide = Matrix<Fp>::from_rows(f, {{1, 0, 0}, {0, 1, 0}});
    CHECK_THROWS_AS(a + wide, DimensionError);
    CHECK_THROWS_AS(wide * a, DimensionError);
    CHECK_THROWS_AS(hcat(a, wide.transposed()), DimensionError);

    // mixed moduli are an error, not a silent coercion
    Fp g(7);
    auto c = Matrix<Fp>::from_rows(g, {{1, 2}, {3, 4}});
    CHECK_THROWS_AS(a + c, FieldMismatchError);
    CHECK(a != c);
}

TEST_CASE("rank and inverse over all fields", "[matrix]") {
    F2 f2;
    Fp f7(7);
    Rationals q;

    CHECK(rank(Matrix<F2>::from_rows(f2, {{1, 1}, {1, 1}})) == 1);
    CHECK(rank(Matrix<Fp>::from_rows(f7, {{1, 2, 3}, {2, 4, 6}, {0, 0, 1}})) == 2);
    CHECK(rank(Matrix<Rationals>(q, 3, 3)) == 0);

    // this matrix is singular mod 2 but invertible over the rationals
    auto m2 = Matrix<F2>::from_rows(f2, {{1, 1}, {1, 1}});
    auto mq = Matrix<Rationals>::from_rows(q, {{1, 1}, {1, -1}});
    CHECK_THROWS_AS(inverse(m2), SingularMatrixError);
    CHECK(inverse(mq) * mq == Matrix<Rationals>::identity(q, 2));

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_invertible_f2(5, rng);
        CHECK(a * inverse(a) == Matrix<F2>::identity(f2, 5));
        CHECK(inverse(a) * a == Matrix<F2>::identity(f2, 5));
    }
    for (int trial = 0; trial < 10; ++trial) {
        auto a = random_matrix(f7, 4, 4, rng);
        if (rank(a) < 4) continue;
        CHECK(a * inverse(a) == Matrix<Fp>::identity(f7, 4));
    }
}

TEST_CASE("row reduction transform tracks the reduction", "[matrix]") {
    Rationals q;
    auto a = Matrix<Rationals>::from_rows(q, {{2, 4, 1}, {1, 2, 0}, {0, 0, 3}});
    Matrix<Rationals> work = a;
    Matrix<Rationals> t = Matrix<Rationals>::identity(q, 3);
    const auto pivots = detail::rref_in_place(work, &t);
    CHECK(pivots == std::vector<std::size_t>{0, 2});
    CHECK(t * a == work);

    // rref is idempotent
    Matrix<Rationals> again = work;
    detail::rref_in_place(again);
    CHECK(again == work);
}

TEST_CASE("reduced column echelon form is column-space canonical", "[matrix]") {
    std::mt19937_64 rng(23);
    F2 f;
    for (int trial = 0; trial < 30; ++trial) {
        auto a = random_f2_matrix(5, 4, rng);
        auto g = random_invertible_f2(4, rng);
        // column operations preserve the column space, so the canonical form
        // must be identical
        CHECK(reduced_column_echelon(a) == reduced_column_echelon(a * g));
        CHECK(reduced_column_echelon(a).cols() == rank(a));
    }
    // a zero matrix reduces to an empty basis
    CHECK(reduced_column_echelon(Matrix<F2>(f, 3, 2)).cols() == 0);
}

TEST_CASE("rank normal form reaches the identity-corner shape", "[matrix]") {
    std::mt19937_64 rng(37);
    Fp f(13);
    Rationals q;
    for (int trial = 0; trial < 15; ++trial) {
        auto a = random_matrix(f, 4, 6, rng);
        const auto nf = rank_normal_form(a);
        CHECK(nf.rank == rank(a));
        auto d = nf.u * a * nf.v;
        for (std::size_t i = 0; i < d.rows(); ++i)
            for (std::size_t j = 0; j < d.cols(); ++j) {
                const bool on = i == j && i < nf.rank;
                CHECK(f.eq(d(i, j), on ? f.one() : f.zero()));
            }
    }
    // transforms themselves must be invertible
    auto a = random_matrix(q, 3, 5, rng);
    const auto nf = rank_normal_form(a);
    CHECK(rank(nf.u) == 3);
    CHECK(rank(nf.v) == 5);
}

TEST_CASE("generalized inverse satisfies both defining identities", "[matrix]") {
    std::mt19937_64 rng(41);
    Fp f5(5);
    Rationals q;
    for (int trial = 0; trial < 25; ++trial) {
        auto a = random_f2_matrix(4, 6, rng);
        auto g = generalized_inverse(a);
        CHECK(g.rows() == 6);
        CHECK(g.cols() == 4);
        CHECK(a * g * a == a);
        CHECK(g * a * g == g);
    }
    for (int trial = 0; trial < 10; ++trial) {
        auto a = random_matrix(f5, 5, 3, rng);
        auto g = generalized_inverse(a);
        CHECK(a * g * a == a);
        CHECK(g * a * g == g);
        auto b = random_matrix(q, 3, 4, rng);
        auto h = generalized_inverse(b);
        CHECK(b * h * b == b);
        CHECK(h * b * h == h);
    }
    // for invertible matrices the generalized inverse is the inverse
    auto inv = random_invertible_f2(4, rng);
    CHECK(generalized_inverse(inv) == inverse(inv));
}
