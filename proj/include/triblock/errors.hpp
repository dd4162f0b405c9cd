// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace triblock {

// Everything this library throws on purpose derives from Error, so callers
// can distinguish "the input violated a documented contract" from genuine
// bugs (plain std::logic_error / std::bad_alloc / ...).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input text (matrix files, field tags, JSON reports) could not be parsed.
class ParseError : public Error {
public:
    using Error::Error;
};

// Operands live over different fields (e.g. GF(5) vs GF(7)).
class FieldMismatchError : public Error {
public:
    using Error::Error;
};

// Shapes are incompatible or a size constraint is violated.
class DimensionError : public Error {
public:
    using Error::Error;
};

// A documented precondition was violated (non-prime modulus, zero inverse,
// malformed permutation table, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// inverse() of a singular matrix, or a matrix required to be invertible
// is not.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

// --- contract errors with fixed names used across module interfaces ------

// Sum of two subspaces is not direct (their intersection is nontrivial).
class NotDirect : public Error {
public:
    using Error::Error;
};

// Second subspace is not contained in the first.
class NotSubspaceOf : public Error {
public:
    using Error::Error;
};

// A case-specialized constructor was called on input that belongs to the
// other case.
class CaseMismatch : public Error {
public:
    using Error::Error;
};

// The candidate L makes the core block P1 - L*P3 singular, so no
// factorization with this L exists.
class SingularCore : public Error {
public:
    using Error::Error;
};

// Rank exchange requested, but rank(P2 - L*P4) already sits at its lower
// bound m - rank(P4); no further trade is possible.
class AtBound : public Error {
public:
    using Error::Error;
};

// A requested (rank L, rank R) target violates one of the proven lower
// bounds; the message names the violated bound.
class InfeasibleTarget : public Error {
public:
    using Error::Error;
};

// A permutation table is not realized by any invertible bit-matrix.
class NotLinear : public Error {
public:
    using Error::Error;
};

// A circuit stage does not have the structure its kind requires (switch
// stages must preserve the cycle bits, RAM stages the port bits).
class StageNotStreamable : public Error {
public:
    using Error::Error;
};

// An exhaustive enumeration or table was requested beyond the supported
// size cap.
class TooLarge : public Error {
public:
    using Error::Error;
};

}  // namespace triblock
