// SPDX-License-Identifier: MIT
#pragma once

// Exact coefficient fields: GF(2), GF(p) for prime p, and the rationals.
//
// A field object carries the arithmetic; matrix entries are plain values
// (std::uint8_t, std::uint64_t, mpq_class) interpreted through it.  All
// arithmetic is exact — there is no rounding anywhere in this library.

#include <concepts>
#include <cstdint>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "triblock/errors.hpp"

namespace triblock {

// Minimal duck-typed contract every field class satisfies.
template <typename F>
concept FieldType = requires(const F f, const typename F::Value a, const typename F::Value b) {
    { f.zero() } -> std::convertible_to<typename F::Value>;
    { f.one() } -> std::convertible_to<typename F::Value>;
    { f.add(a, b) } -> std::convertible_to<typename F::Value>;
    { f.sub(a, b) } -> std::convertible_to<typename F::Value>;
    { f.neg(a) } -> std::convertible_to<typename F::Value>;
    { f.mul(a, b) } -> std::convertible_to<typename F::Value>;
    { f.inv(a) } -> std::convertible_to<typename F::Value>;
    { f.is_zero(a) } -> std::convertible_to<bool>;
    { f.eq(a, b) } -> std::convertible_to<bool>;
    { f.from_int(std::int64_t{}) } -> std::convertible_to<typename F::Value>;
    { f.to_string(a) } -> std::convertible_to<std::string>;
    { f.parse(std::string{}) } -> std::convertible_to<typename F::Value>;
    { f.tag() } -> std::convertible_to<std::string>;
    { f == f } -> std::convertible_to<bool>;
};

namespace detail {

// Strict signed-integer parse: the whole token must be consumed.
inline std::int64_t parse_int_token(const std::string& s) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used, 10);
        if (used != s.size()) throw ParseError("trailing junk in integer entry: '" + s + "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad integer entry: '" + s + "'");
    } catch (const std::out_of_range&) {
        throw ParseError("integer entry out of range: '" + s + "'");
    }
}

}  // namespace detail

// The two-element field.  Values are 0/1 stored in a byte.
class F2 {
public:
    using Value = std::uint8_t;

    Value zero() const { return 0; }
    Value one() const { return 1; }
    Value add(Value a, Value b) const { return a ^ b; }
    Value sub(Value a, Value b) const { return a ^ b; }
    Value neg(Value a) const { return a; }
    Value mul(Value a, Value b) const { return a & b; }
    Value inv(Value a) const {
        if (a == 0) throw PreconditionError("inverse of zero in GF(2)");
        return 1;
    }
    bool is_zero(Value a) const { return a == 0; }
    bool eq(Value a, Value b) const { return a == b; }

    Value from_int(std::int64_t v) const { return static_cast<Value>(v & 1); }
    std::string to_string(Value a) const { return a ? "1" : "0"; }
    Value parse(const std::string& s) const { return from_int(detail::parse_int_token(s)); }
    std::string tag() const { return "f2"; }

    bool operator==(const F2&) const = default;
};

// Prime field GF(p).  Values are canonical representatives in [0, p).
// The modulus is capped below 2^31 so products fit in 64 bits.
class Fp {
public:
    using Value = std::uint64_t;

    explicit Fp(std::uint64_t p) : p_(p) {
        if (p < 2 || p >= (std::uint64_t{1} << 31))
            throw PreconditionError("GF(p) modulus must satisfy 2 <= p < 2^31");
        if (!is_prime(p)) throw PreconditionError("GF(p) modulus " + std::to_string(p) + " is not prime");
    }

    std::uint64_t modulus() const { return p_; }

    Value zero() const { return 0; }
    Value one() const { return 1 % p_; }
    Value add(Value a, Value b) const {
        const Value s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Value sub(Value a, Value b) const { return a >= b ? a - b : a + p_ - b; }
    Value neg(Value a) const { return a == 0 ? 0 : p_ - a; }
    Value mul(Value a, Value b) const { return (a * b) % p_; }
    Value inv(Value a) const {
        if (a == 0) throw PreconditionError("inverse of zero in GF(" + std::to_string(p_) + ")");
        // extended Euclid; p prime and a != 0 guarantee gcd 1
        std::int64_t t = 0, nt = 1;
        std::int64_t r = static_cast<std::int64_t>(p_), nr = static_cast<std::int64_t>(a);
        while (nr != 0) {
            const std::int64_t q = r / nr;
            t = std::exchange(nt, t - q * nt);
            r = std::exchange(nr, r - q * nr);
        }
        if (t < 0) t += static_cast<std::int64_t>(p_);
        return static_cast<Value>(t);
    }
    bool is_zero(Value a) const { return a == 0; }
    bool eq(Value a, Value b) const { return a == b; }

    Value from_int(std::int64_t v) const {
        const std::int64_t p = static_cast<std::int64_t>(p_);
        std::int64_t r = v % p;
        if (r < 0) r += p;
        return static_cast<Value>(r);
    }
    std::string to_string(Value a) const { return std::to_string(a); }
    Value parse(const std::string& s) const { return from_int(detail::parse_int_token(s)); }
    std::string tag() const { return "fp:" + std::to_string(p_); }

    bool operator==(const Fp&) const = default;

    static bool is_prime(std::uint64_t p) {
        if (p < 2) return false;
        if (p % 2 == 0) return p == 2;
        if (p % 3 == 0) return p == 3;
        for (std::uint64_t d = 5; d * d <= p; d += 6)
            if (p % d == 0 || p % (d + 2) == 0) return false;
        return true;
    }

private:
    std::uint64_t p_;
};

// The rationals, backed by GMP.  Values are kept canonical (reduced,
// positive denominator), which mpq_class arithmetic preserves.
class Rationals {
public:
    using Value = mpq_class;

    Value zero() const { return Value(0); }
    Value one() const { return Value(1); }
    Value add(const Value& a, const Value& b) const { return a + b; }
    Value sub(const Value& a, const Value& b) const { return a - b; }
    Value neg(const Value& a) const { return -a; }
    Value mul(const Value& a, const Value& b) const { return a * b; }
    Value inv(const Value& a) const {
        if (a == 0) throw PreconditionError("inverse of zero rational");
        return Value(1) / a;
    }
    bool is_zero(const Value& a) const { return a == 0; }
    bool eq(const Value& a, const Value& b) const { return a == b; }

    Value from_int(std::int64_t v) const {
        Value q;
        q = static_cast<long>(v);
        return q;
    }
    std::string to_string(const Value& a) const { return a.get_str(); }
    Value parse(const std::string& s) const {
        try {
            Value q(s, 10);
            if (q.get_den() == 0) throw ParseError("rational entry with zero denominator: '" + s + "'");
            q.canonicalize();
            return q;
        } catch (const std::invalid_argument&) {
            throw ParseError("bad rational entry: '" + s + "'");
        }
    }
    std::string tag() const { return "q"; }

    bool operator==(const Rationals&) const = default;
};

static_assert(FieldType<F2>);
static_assert(FieldType<Fp>);
static_assert(FieldType<Rationals>);

}  // namespace triblock
