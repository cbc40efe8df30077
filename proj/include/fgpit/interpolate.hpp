#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fgpit/commpoly.hpp"
#include "fgpit/field.hpp"

namespace fgpit {

/// A hitting set: for every nonzero polynomial in `num_vars` variables of
/// total degree <= degree and at most `sparsity` monomials, some point of the
/// set is a non-root. All coordinates are nonzero.
struct TestSet {
    std::size_t num_vars;
    int degree;
    std::int64_t sparsity;
    std::vector<std::vector<Scalar>> points;
};

/// Deterministic construction. Over the rationals (and prime fields large
/// enough that distinct monomials keep distinct integer values) the set is
/// {(q_1^t, ..., q_N^t)} for the first N primes q_i and t = 0..s'-1 with
/// s' = min(sparsity, #monomials); a transposed Vandermonde argument gives
/// the hitting property. Over small finite fields the set maps variables to
/// powers y^(k^i mod q) for a swept k, reducing to univariate hitting.
/// Throws FieldTooSmall when the field cannot accommodate the construction.
TestSet deterministic_test_set(std::size_t num_vars, int degree, std::int64_t sparsity,
                               const FieldPtr& field);

/// Evaluation access to an unknown sparse commutative polynomial.
using CommBlackBox = std::function<Scalar(std::span<const Scalar>)>;

/// Monic characteristic polynomial (ascending coefficients) of the shortest
/// linear recurrence generating the sequence; degree 0 (the constant 1) for
/// the all-zero sequence.
std::vector<Scalar> berlekamp_massey(std::span<const Scalar> seq, const FieldPtr& field);

/// Exact recovery of an unknown polynomial over `vars` of total degree <=
/// degree and sparsity <= sparsity from black-box evaluations: prime-power
/// evaluation points, linear-recurrence decoding, trial-division monomial
/// recovery, and a verification pass on fresh points. Throws
/// SparsityExceeded when the black box is inconsistent with the bounds.
///
/// `position_groups`, when given, restricts candidate monomials to products
/// of exactly one variable from each group (the shape of word-encoding
/// images); otherwise all exponent vectors of total degree <= degree are
/// candidates.
CommPoly sparse_interpolate(const CommBlackBox& bb, const std::vector<CommVar>& vars, int degree,
                            std::int64_t sparsity, const FieldPtr& field,
                            const std::vector<std::vector<std::size_t>>* position_groups = nullptr);

/// First `count` primes.
std::vector<std::uint64_t> first_primes(std::size_t count);

}  // namespace fgpit
