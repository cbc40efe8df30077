#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fgpit {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Matrix inversion hit a zero pivot. Recoverable: identity-testing callers
// resample the assignment instead of aborting.
struct SingularMatrix : Error {
    SingularMatrix() : Error("matrix is singular") {}
};

// Expression text rejected; `position` is the byte offset of the offending token.
struct ParseError : Error {
    ParseError(std::size_t position, const std::string& msg)
        : Error(msg + " (at position " + std::to_string(position) + ")"), position(position) {}
    std::size_t position;
};

// Symbolic expansion blew past a caller-supplied guard. Means "oracle
// infeasible for these bounds", not that the expression is malformed.
struct GuardExceeded : Error {
    enum class Kind { Degree, Sparsity };
    GuardExceeded(Kind kind, const std::string& msg) : Error(msg), kind(kind) {}
    Kind kind;
};

// A commutative monomial has no preimage under the word encoding.
struct NotInImage : Error {
    explicit NotInImage(const std::string& msg) : Error(msg) {}
};

// The field (or its reachable extensions) cannot support the requested
// operation at the required size.
struct FieldTooSmall : Error {
    explicit FieldTooSmall(const std::string& msg) : Error(msg) {}
};

// Interpolation verification failed: the black box is not explained by any
// polynomial within the declared degree/sparsity bounds.
struct SparsityExceeded : Error {
    explicit SparsityExceeded(const std::string& msg) : Error(msg) {}
};

}  // namespace fgpit
