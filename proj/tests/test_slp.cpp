// SPDX-License-Identifier: MIT
#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "triblock/oracle.hpp"
#include "triblock/slp.hpp"

using namespace triblock;

namespace {

BlockedMatrix<F2> circuit_example() {
    F2 f;
    return BlockedMatrix<F2>(Matrix<F2>::from_rows(f, {{1, 1, 0, 0, 1, 0, 1},
                                                       {0, 0, 1, 0, 0, 1, 0},
                                                       {1, 1, 0, 1, 1, 1, 1},
                                                       {0, 0, 0, 0, 0, 1, 1},
                                                       {1, 0, 1, 1, 0, 0, 0},
                                                       {1, 1, 0, 0, 1, 1, 1},
                                                       {0, 1, 0, 0, 0, 0, 0}}),
                             4, 3);
}

}  // namespace

TEST_CASE("index/bit-vector conversions", "[slp]") {
    F2 f;
    CHECK(to_bits(12, 4) == Matrix<F2>::from_rows(f, {{1}, {1}, {0}, {0}}));
    CHECK(to_bits(7, 4) == Matrix<F2>::from_rows(f, {{0}, {1}, {1}, {1}}));
    CHECK(from_bits(to_bits(12, 4)) == 12);
    for (std::uint64_t i = 0; i < 32; ++i) CHECK(from_bits(to_bits(i, 5)) == i);
    CHECK_THROWS_AS(to_bits(8, 3), PreconditionError);
    CHECK_THROWS_AS(to_bits(0, 64), TooLarge);

    // stream layout: upper bits select the cycle, lower bits the port
    CHECK(stream_coords(14, 3, 2) == std::pair<std::uint64_t, std::uint64_t>{3, 2});
    CHECK(stream_coords(0, 3, 2) == std::pair<std::uint64_t, std::uint64_t>{0, 0});
    CHECK(stream_coords(31, 3, 2) == std::pair<std::uint64_t, std::uint64_t>{7, 3});
}

TEST_CASE("permutation tables", "[slp]") {
    PermutationTable p({2, 0, 1});
    PermutationTable q({1, 2, 0});
    CHECK(compose(p, q) == PermutationTable({0, 1, 2}));
    CHECK(inverted(p) == q);
    CHECK(p[0] == 2);
    CHECK_THROWS_AS(PermutationTable({0, 0, 1}), PreconditionError);
    CHECK_THROWS_AS(PermutationTable({0, 3, 1}), PreconditionError);
    CHECK_THROWS_AS(compose(p, PermutationTable({0, 1})), DimensionError);
}

TEST_CASE("linear index permutations", "[slp]") {
    F2 f;
    // the elementary add-to-every-lower-bit matrix swaps the upper half of
    // the index range in a bit-reversal pattern
    auto v3 = Matrix<F2>::from_rows(f, {{1, 0, 0}, {1, 1, 0}, {1, 0, 1}});
    CHECK(apply_linear_perm(v3) == PermutationTable({0, 1, 2, 3, 7, 6, 5, 4}));

    auto v4 = Matrix<F2>::from_rows(f, {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1}});
    CHECK(apply_linear_perm(v4) ==
          PermutationTable({0, 1, 2, 3, 4, 5, 6, 7, 15, 14, 13, 12, 11, 10, 9, 8}));

    CHECK(apply_linear_perm(Matrix<F2>::identity(f, 4)) ==
          PermutationTable({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}));
    CHECK_THROWS_AS(apply_linear_perm(Matrix<F2>(f, 3, 3)), SingularMatrixError);

    // group homomorphism: pi(A*B) = pi(A) after pi(B)
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_invertible_f2(4, rng);
        auto b = random_invertible_f2(4, rng);
        CHECK(apply_linear_perm(a * b) == compose(apply_linear_perm(a), apply_linear_perm(b)));
    }
}

TEST_CASE("matrix recovery from a permutation", "[slp]") {
    std::mt19937_64 rng(67);
    for (std::size_t k = 1; k <= 5; ++k)
        for (int trial = 0; trial < 10; ++trial) {
            auto a = random_invertible_f2(k, rng);
            CHECK(recover_matrix(apply_linear_perm(a)) == a);
        }

    // a linear map always fixes index 0
    CHECK_THROWS_AS(recover_matrix(PermutationTable({1, 0, 2, 3})), NotLinear);
    // fixes 0 and agrees on all basis probes, but fails on a composite index
    CHECK_THROWS_AS(recover_matrix(PermutationTable({0, 1, 2, 3, 4, 5, 7, 6})), NotLinear);
    // table size must be a power of two
    CHECK_THROWS_AS(recover_matrix(PermutationTable({0, 2, 1})), PreconditionError);
}

TEST_CASE("circuit synthesis golden counts", "[slp]") {
    auto bm = circuit_example();
    auto spec = synthesize_circuit(bm);
    CHECK(spec.m == 4);
    CHECK(spec.n == 3);
    CHECK(spec.pre_switches == 4);
    CHECK(spec.ram_banks == 8);
    CHECK(spec.post_switches == 8);
    CHECK(spec.total_switches() == 12);

    // realizing the inverse matrix swaps the switch cost between the stages
    BlockedMatrix<F2> bmi(inverse(bm.matrix()), 4, 3);
    auto spec_inv = synthesize_circuit(bmi);
    CHECK(spec_inv.pre_switches == 8);
    CHECK(spec_inv.ram_banks == 8);
    CHECK(spec_inv.post_switches == 4);

    // stage shapes: the port stages never mix cycles, the RAM stage never
    // mixes ports
    const std::size_t m = 4, n = 3;
    CHECK(spec.pre_stage.block(0, 0, m, m).is_identity());
    CHECK(spec.pre_stage.block(0, m, m, n).is_zero());
    CHECK(spec.ram_stage.block(m, 0, n, m).is_zero());
    CHECK(spec.ram_stage.block(m, m, n, n).is_identity());
    CHECK(spec.post_stage.block(0, 0, m, m).is_identity());
    CHECK(spec.post_stage.block(0, m, m, n).is_zero());
    CHECK(spec.post_stage * spec.ram_stage * spec.pre_stage == bm.matrix());
}

TEST_CASE("streaming simulation realizes the matrix permutation", "[slp]") {
    auto bm = circuit_example();
    auto spec = synthesize_circuit(bm);
    auto table = simulate_stream(spec);
    CHECK(table.size() == 128);
    CHECK(table == apply_linear_perm(bm.matrix()));

    // the inverse circuit undoes it element for element
    BlockedMatrix<F2> bmi(inverse(bm.matrix()), 4, 3);
    auto table_inv = simulate_stream(synthesize_circuit(bmi));
    F2 f;
    CHECK(compose(table, table_inv) == apply_linear_perm(Matrix<F2>::identity(f, 7)));

    // random splits: synthesis + simulation always realize pi(P)
    std::mt19937_64 rng(71);
    int done = 0;
    while (done < 10) {
        auto p = random_f2_matrix(6, 6, rng);
        if (rank(p) != 6) continue;
        const std::size_t m = 1 + rng() % 5;
        BlockedMatrix<F2> b(p, m, 6 - m);
        ++done;
        CHECK(simulate_stream(synthesize_circuit(b)) == apply_linear_perm(p));
    }

    // a corrupted port stage (data moved across cycles) is not streamable
    auto bad = spec;
    bad.pre_stage(0, 4) = F2{}.one();
    CHECK_THROWS_AS(simulate_stream(bad), StageNotStreamable);
    auto bad2 = spec;
    bad2.ram_stage(5, 0) = F2{}.one();
    CHECK_THROWS_AS(simulate_stream(bad2), StageNotStreamable);
}

TEST_CASE("ram addressing schedule", "[slp]") {
    F2 f;
    // the identity matrix streams straight through: no latency, one live
    // element per bank
    BlockedMatrix<F2> id(Matrix<F2>::identity(f, 7), 4, 3);
    auto sched_id = ram_addressing(synthesize_circuit(id));
    CHECK(sched_id.banks.size() == 8);
    CHECK(sched_id.latency == 0);
    CHECK(sched_id.max_occupancy == 1);
    for (const auto& bank : sched_id.banks)
        for (std::uint64_t c = 0; c < bank.read_cycle.size(); ++c) CHECK(bank.read_cycle[c] == c);

    auto spec = synthesize_circuit(circuit_example());
    auto sched = ram_addressing(spec);
    CHECK(sched.banks.size() == 8);
    const std::size_t cycles = 16;
    for (const auto& bank : sched.banks) {
        REQUIRE(bank.read_cycle.size() == cycles);
        // reads are a bijection on cycles (the cycle block is invertible)
        auto sorted = bank.read_cycle;
        std::sort(sorted.begin(), sorted.end());
        for (std::uint64_t c = 0; c < cycles; ++c) CHECK(sorted[c] == c);
        // nothing is read before it is written
        for (std::uint64_t c = 0; c < cycles; ++c) CHECK(bank.read_cycle[c] + bank.latency >= c);
        CHECK(bank.latency <= sched.latency);
        CHECK(bank.max_occupancy >= 1);
        CHECK(bank.max_occupancy <= cycles);
    }
    CHECK(sched.max_occupancy <= sched.latency + 1);
}
