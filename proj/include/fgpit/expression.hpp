#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fgpit/algebra.hpp"
#include "fgpit/field.hpp"
#include "fgpit/matrix.hpp"
#include "fgpit/rng.hpp"

namespace fgpit {

/// Formula DAG over the variables x_1..x_n and their inverses, with field
/// constants, +, * and powers. Inverses apply to variables only (inversion
/// height one); general subexpressions admit nonnegative powers, which are
/// unrolled into shared products at parse time.
///
/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ('^' signed-int)?
///   atom   := 'x' digits | integer-literal | '(' expr ')'
/// A '-' is binary subtraction (folded to Add of a (-1)-scaled operand);
/// integer literals may carry a leading '-' where an atom is expected.
/// '#' starts a comment running to the end of the line.
class Expression {
  public:
    enum class Kind : std::uint8_t { Const, Var, InvVar, Add, Mul, Pow };

    struct Node {
        Kind kind = Kind::Const;
        Scalar value;              // Const
        int generator = 0;         // Var/InvVar and Pow base
        int base_inverted = 0;     // Pow: 1 when the base is an inverse variable
        std::int64_t exponent = 0; // Pow: >= 2
        int lhs = -1, rhs = -1;    // Add/Mul children
    };

    static Expression parse(std::string_view text, int alphabet, const FieldPtr& field);
    // A formula computing the given element: sum of coefficient-scaled letter
    // products.
    static Expression from_algebra(const AlgebraElement& element, int alphabet);

    int alphabet() const { return alphabet_; }
    const FieldPtr& field() const { return field_; }
    const std::vector<Node>& nodes() const { return nodes_; }

    // Canonical text form; parses back to an equivalent expression.
    std::string str() const;

    // Homomorphic matrix evaluation; constants are embedded into the
    // assignment's field, powers use repeated squaring.
    SquareMatrix evaluate(const MatrixAssignment& assignment) const;

    // Exact canonical form in the free group algebra. Throws GuardExceeded
    // when any intermediate result exceeds a guard (the oracle is infeasible
    // for these bounds, the expression itself may be fine).
    AlgebraElement expand(std::int64_t degree_guard, std::int64_t sparsity_guard) const;

    // Structural upper bound on the degree of expand():
    // Const 0, Var 1, Pow |e|*child, Add max, Mul sum (saturating).
    std::int64_t syntactic_degree_bound() const;

  private:
    Expression(FieldPtr field, int alphabet) : field_(std::move(field)), alphabet_(alphabet) {}

    FieldPtr field_;
    int alphabet_;
    std::vector<Node> nodes_;
    int root_ = -1;

    friend class ExpressionBuilder;
};

/// Black-box access to an expression: evaluation on verified inverse pairs is
/// the only operation. Wraps a pure callable; safe for concurrent calls when
/// the callable is.
class BlackBox {
  public:
    using Eval = std::function<SquareMatrix(const MatrixAssignment&)>;

    BlackBox(int alphabet, Eval eval, std::optional<std::int64_t> degree_bound = std::nullopt,
             std::optional<std::int64_t> sparsity_bound = std::nullopt)
        : alphabet_(alphabet),
          eval_(std::move(eval)),
          degree_bound_(degree_bound),
          sparsity_bound_(sparsity_bound) {}

    static BlackBox from_expression(const Expression& e);

    SquareMatrix operator()(const MatrixAssignment& assignment) const { return eval_(assignment); }

    int alphabet() const { return alphabet_; }
    std::optional<std::int64_t> degree_bound() const { return degree_bound_; }
    std::optional<std::int64_t> sparsity_bound() const { return sparsity_bound_; }

    // The black box computing (this - g); used to peel recovered parts off.
    BlackBox minus(const AlgebraElement& g) const;

  private:
    int alphabet_;
    Eval eval_;
    std::optional<std::int64_t> degree_bound_;
    std::optional<std::int64_t> sparsity_bound_;
};

// ---- reproducible test corpora ----

// Random formula DAG of bounded depth with constants drawn from {-2..2}.
Expression random_expression(Rng& rng, int alphabet, int depth, const FieldPtr& field);

// Uniform reduced word of the exact degree (letters never cancel).
ReducedWord random_reduced_word(Rng& rng, int alphabet, int degree);

// Element with `sparsity` distinct words of degree <= degree (>= 1 word of
// exactly `degree` when exact_degree) and coefficients in {-2,-1,1,2}.
AlgebraElement random_sparse_element(Rng& rng, const FieldPtr& field, int alphabet, int sparsity,
                                     int degree, bool exact_degree);

}  // namespace fgpit
