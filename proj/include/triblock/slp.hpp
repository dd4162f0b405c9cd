// SPDX-License-Identifier: MIT
#pragma once

// Streaming linear permutations over GF(2).
//
// An invertible bit-matrix P of size m+n induces a permutation pi(P) of
// {0, ..., 2^(m+n)-1} by acting on radix-2 digit vectors (most significant
// digit on top).  When the 2^(m+n) elements are streamed 2^n per cycle over
// 2^m cycles -- element i in cycle (upper m bits) at port (lower n bits) --
// the factorization P = [[I,0],[L,C1]] * [[C4,C3],[0,I]] * [[I,0],[R,I]]
// maps onto hardware: a switching network (port stage), a bank of 2^n RAMs
// (time stage), and a second switching network.  A port stage [[I,0],[B,D]]
// costs rank(B) * 2^(n-1) two-input switches; the D part is fixed wiring.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "triblock/blocked.hpp"
#include "triblock/decompose.hpp"
#include "triblock/errors.hpp"
#include "triblock/matrix.hpp"

namespace triblock {

using F2Matrix = Matrix<F2>;

// Radix-2 digits of i as a width x 1 column, most significant digit on top.
inline F2Matrix to_bits(std::uint64_t i, std::size_t width) {
    if (width > 63) throw TooLarge("bit width beyond 63 is not supported");
    if (i >> width != 0)
        throw PreconditionError("index " + std::to_string(i) + " does not fit in " +
                                std::to_string(width) + " bits");
    F2Matrix v(F2{}, width, 1);
    for (std::size_t r = 0; r < width; ++r) v(r, 0) = static_cast<std::uint8_t>((i >> (width - 1 - r)) & 1);
    return v;
}

inline std::uint64_t from_bits(const F2Matrix& v) {
    if (v.cols() != 1) throw DimensionError("from_bits expects a column vector");
    if (v.rows() > 63) throw TooLarge("bit width beyond 63 is not supported");
    std::uint64_t i = 0;
    for (std::size_t r = 0; r < v.rows(); ++r) i = (i << 1) | (v(r, 0) & 1);
    return i;
}

// Cycle and port of element i in an (m, n) stream.
inline std::pair<std::uint64_t, std::uint64_t> stream_coords(std::uint64_t i, std::size_t m,
                                                             std::size_t n) {
    if (m + n > 63) throw TooLarge("stream index width beyond 63 is not supported");
    if (i >> (m + n) != 0)
        throw PreconditionError("index " + std::to_string(i) + " out of range for m+n bits");
    return {i >> n, i & ((std::uint64_t{1} << n) - 1)};
}

class PermutationTable {
public:
    explicit PermutationTable(std::vector<std::uint64_t> mapping) : map_(std::move(mapping)) {
        std::vector<bool> seen(map_.size(), false);
        for (const auto j : map_) {
            if (j >= map_.size() || seen[j])
                throw PreconditionError("mapping is not a permutation");
            seen[j] = true;
        }
    }

    std::size_t size() const { return map_.size(); }
    std::uint64_t operator[](std::size_t i) const { return map_[i]; }
    const std::vector<std::uint64_t>& mapping() const { return map_; }

    bool operator==(const PermutationTable&) const = default;

private:
    std::vector<std::uint64_t> map_;
};

// (a after b): result[i] = a[b[i]], matching pi(A*B) = compose(pi(A), pi(B)).
inline PermutationTable compose(const PermutationTable& a, const PermutationTable& b) {
    if (a.size() != b.size()) throw DimensionError("permutation size mismatch in compose");
    std::vector<std::uint64_t> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return PermutationTable(std::move(r));
}

inline PermutationTable inverted(const PermutationTable& a) {
    std::vector<std::uint64_t> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[a[i]] = i;
    return PermutationTable(std::move(r));
}

// The permutation i -> j with j_b = P * i_b.
inline PermutationTable apply_linear_perm(const F2Matrix& p) {
    if (p.rows() != p.cols()) throw DimensionError("apply_linear_perm expects a square matrix");
    const std::size_t k = p.rows();
    if (k > 20) throw TooLarge("permutation table beyond 2^20 entries");
    if (rank(p) != k) throw SingularMatrixError("matrix does not induce a permutation: singular");
    std::vector<std::uint64_t> map(std::size_t{1} << k);
    for (std::uint64_t i = 0; i < map.size(); ++i) map[i] = from_bits(p * to_bits(i, k));
    return PermutationTable(std::move(map));
}

// Inverse of apply_linear_perm: probe the basis indices 2^b to read off
// candidate columns, then verify the candidate on every point.
inline F2Matrix recover_matrix(const PermutationTable& perm) {
    const std::size_t size = perm.size();
    if (size == 0 || (size & (size - 1)) != 0)
        throw PreconditionError("permutation size must be a power of two");
    std::size_t k = 0;
    while ((std::size_t{1} << k) < size) ++k;
    if (perm[0] != 0) throw NotLinear("a linear permutation must fix index 0");
    F2Matrix p(F2{}, k, k);
    for (std::size_t b = 0; b < k; ++b) {
        // basis vector e_b (digit row b set) is the index 2^(k-1-b)
        const std::uint64_t img = perm[std::uint64_t{1} << (k - 1 - b)];
        const F2Matrix col = to_bits(img, k);
        for (std::size_t r = 0; r < k; ++r) p(r, b) = col(r, 0);
    }
    for (std::uint64_t i = 0; i < size; ++i)
        if (from_bits(p * to_bits(i, k)) != perm[i])
            throw NotLinear("permutation is not induced by any bit-matrix");
    return p;
}

// A synthesized three-stage streaming circuit.
struct CircuitSpec {
    std::size_t m = 0;
    std::size_t n = 0;
    F2Matrix pre_stage;   // [[I, 0], [R, I]]   port stage, acts first
    F2Matrix ram_stage;   // [[C4, C3], [0, I]] time stage
    F2Matrix post_stage;  // [[I, 0], [L, C1]]  port stage
    std::size_t pre_switches = 0;
    std::size_t post_switches = 0;
    std::size_t ram_banks = 0;

    std::size_t total_switches() const { return pre_switches + post_switches; }
};

namespace detail {

inline std::size_t switch_count(std::size_t port_block_rank, std::size_t n) {
    // rank * 2^(n-1); a rank-0 stage needs no switches even when n = 0
    return port_block_rank == 0 ? 0 : port_block_rank << (n - 1);
}

}  // namespace detail

// Factor P optimally and map the three factors onto stages.
inline CircuitSpec synthesize_circuit(const BlockedMatrix<F2>& bm) {
    const Decomposition<F2> d = decompose_optimal(bm);
    const Deco4<F2> shape = to_deco4(d);
    CircuitSpec spec{bm.m(),
                     bm.n(),
                     shape.right,
                     shape.middle,
                     shape.left,
                     detail::switch_count(d.rank_R, bm.n()),
                     detail::switch_count(d.rank_L, bm.n()),
                     std::size_t{1} << bm.n()};
    return spec;
}

namespace detail {

enum class StageKind { Port, Time };

// A port stage must not move data across cycles (top blocks I, 0); a time
// stage must not move data across ports (bottom blocks 0, I).  Either way
// the matrix must be invertible.
inline void check_stage(const F2Matrix& s, std::size_t m, std::size_t n, StageKind kind,
                        const char* which) {
    if (s.rows() != m + n || s.cols() != m + n)
        throw StageNotStreamable(std::string(which) + " stage has the wrong shape");
    if (kind == StageKind::Port) {
        if (!s.block(0, 0, m, m).is_identity() || !s.block(0, m, m, n).is_zero())
            throw StageNotStreamable(std::string(which) +
                                     " stage would move data across cycles (top blocks must be [I 0])");
    } else {
        if (!s.block(m, 0, n, m).is_zero() || !s.block(m, m, n, n).is_identity())
            throw StageNotStreamable(std::string(which) +
                                     " stage would move data across ports (bottom blocks must be [0 I])");
    }
    if (rank(s) != m + n) throw StageNotStreamable(std::string(which) + " stage matrix is singular");
}

}  // namespace detail

// Functional simulation: push every element's (cycle, port) pair through the
// three stages and return the end-to-end index permutation.
inline PermutationTable simulate_stream(const CircuitSpec& spec) {
    const std::size_t m = spec.m, n = spec.n;
    if (m + n > 20) throw TooLarge("stream simulation beyond 2^20 elements");
    detail::check_stage(spec.pre_stage, m, n, detail::StageKind::Port, "pre");
    detail::check_stage(spec.ram_stage, m, n, detail::StageKind::Time, "ram");
    detail::check_stage(spec.post_stage, m, n, detail::StageKind::Port, "post");

    const F2Matrix pre_b = spec.pre_stage.block(m, 0, n, m), pre_d = spec.pre_stage.block(m, m, n, n);
    const F2Matrix c4 = spec.ram_stage.block(0, 0, m, m), c3 = spec.ram_stage.block(0, m, m, n);
    const F2Matrix post_b = spec.post_stage.block(m, 0, n, m),
                   post_d = spec.post_stage.block(m, m, n, n);
    std::vector<std::uint64_t> map(std::size_t{1} << (m + n));
    for (std::uint64_t i = 0; i < map.size(); ++i) {
        auto [c, p] = stream_coords(i, m, n);
        p = from_bits(pre_b * to_bits(c, m) + pre_d * to_bits(p, n));   // switch network, same cycle
        c = from_bits(c4 * to_bits(c, m) + c3 * to_bits(p, n));         // RAM bank, same port
        p = from_bits(post_b * to_bits(c, m) + post_d * to_bits(p, n)); // switch network, same cycle
        map[i] = (c << n) | p;
    }
    return PermutationTable(std::move(map));
}

// Write/read schedule of the RAM stage.  Element entering bank p at input
// cycle c is written to address c and read back when output cycle
// C4*c_b + C3*p_b is issued.  A single constant latency (per bank) delays
// reads just enough that nothing is read before it was written; occupancy
// counts elements resident simultaneously under that schedule.
struct RamSchedule {
    struct Bank {
        std::vector<std::uint64_t> read_cycle;  // indexed by write cycle
        std::size_t latency = 0;                // minimal delay so read >= write
        std::size_t max_occupancy = 0;
    };
    std::vector<Bank> banks;
    std::size_t latency = 0;        // max over banks
    std::size_t max_occupancy = 0;  // max over banks
};

inline RamSchedule ram_addressing(const CircuitSpec& spec) {
    const std::size_t m = spec.m, n = spec.n;
    if (m + n > 20) throw TooLarge("RAM schedule beyond 2^20 elements");
    detail::check_stage(spec.ram_stage, m, n, detail::StageKind::Time, "ram");
    const F2Matrix c4 = spec.ram_stage.block(0, 0, m, m), c3 = spec.ram_stage.block(0, m, m, n);
    const std::size_t cycles = std::size_t{1} << m;
    RamSchedule sched;
    sched.banks.reserve(std::size_t{1} << n);
    for (std::uint64_t p = 0; p < (std::uint64_t{1} << n); ++p) {
        RamSchedule::Bank bank;
        bank.read_cycle.resize(cycles);
        const F2Matrix offset = c3 * to_bits(p, n);
        for (std::uint64_t c = 0; c < cycles; ++c) {
            const std::uint64_t r = from_bits(c4 * to_bits(c, m) + offset);
            bank.read_cycle[c] = r;
            if (r < c) bank.latency = std::max(bank.latency, static_cast<std::size_t>(c - r));
        }
        for (std::uint64_t t = 0; t < cycles + bank.latency; ++t) {
            std::size_t live = 0;
            for (std::uint64_t c = 0; c < cycles; ++c)
                if (c <= t && t <= bank.read_cycle[c] + bank.latency) ++live;
            bank.max_occupancy = std::max(bank.max_occupancy, live);
        }
        sched.latency = std::max(sched.latency, bank.latency);
        sched.max_occupancy = std::max(sched.max_occupancy, bank.max_occupancy);
        sched.banks.push_back(std::move(bank));
    }
    return sched;
}

}  // namespace triblock
