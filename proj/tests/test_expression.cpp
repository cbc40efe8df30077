#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "fgpit/errors.hpp"
#include "fgpit/expression.hpp"
#include "fgpit/rng.hpp"
#include "support.hpp"

using namespace fgpit;

namespace {

const FieldPtr kQ = Field::rationals();
const FieldPtr kP = Field::prime_field(kDefaultPrime);

MatrixAssignment random_assignment_matrices(const FieldPtr& f, int n, std::size_t dim, Rng& rng) {
    std::vector<std::pair<SquareMatrix, SquareMatrix>> pairs;
    for (int i = 0; i < n; ++i) {
        SquareMatrix inv(f, 1);
        SquareMatrix m = fgpit::test::random_nonsingular(f, dim, rng, &inv);
        pairs.emplace_back(m, inv);
    }
    return MatrixAssignment(std::move(pairs));
}

AlgebraElement expand_of(const std::string& text, int n, const FieldPtr& f = kQ) {
    return Expression::parse(text, n, f).expand(64, 4096);
}

}  // namespace

TEST_CASE("parsing the running example") {
    Expression e = Expression::parse("x1*x2^-1 + x2*x1^-1", 2, kQ);
    AlgebraElement a = e.expand(8, 64);
    CHECK(a.sparsity() == 2);
    CHECK(a.degree() == 2);
    CHECK(a.coefficient(ReducedWord::single(1, 1) * ReducedWord::single(2, -1)) == kQ->one());
    CHECK(a.coefficient(ReducedWord::single(2, 1) * ReducedWord::single(1, -1)) == kQ->one());
}

TEST_CASE("parser folds and rejects") {
    // x^0 folds to the constant 1
    AlgebraElement one = expand_of("x1^0", 1);
    CHECK(one == AlgebraElement::constant(kQ->one()));
    CHECK(expand_of("(x1 + x2)^0", 2) == AlgebraElement::constant(kQ->one()));

    // constants fold numerically
    CHECK(expand_of("2^10", 1) == AlgebraElement::constant(kQ->from_int(1024)));

    // positive powers of parenthesized expressions unroll
    CHECK(expand_of("(x1+x2)^2", 2) == expand_of("(x1+x2)*(x1+x2)", 2));

    // inversion of a non-variable is out of the language
    CHECK_THROWS_AS(Expression::parse("(x1+x2)^-1", 2, kQ), ParseError);
    CHECK_THROWS_AS(Expression::parse("2^-1", 1, kQ), ParseError);
    CHECK_THROWS_AS(Expression::parse("(x1*x2)^-2", 2, kQ), ParseError);

    CHECK_THROWS_AS(Expression::parse("x3", 2, kQ), ParseError);
    CHECK_THROWS_AS(Expression::parse("x0", 2, kQ), ParseError);
    CHECK_THROWS_AS(Expression::parse("x1 +", 2, kQ), ParseError);
    CHECK_THROWS_AS(Expression::parse("(x1", 2, kQ), ParseError);
    CHECK_THROWS_AS(Expression::parse("x1 @ x2", 2, kQ), ParseError);
    CHECK_THROWS_AS(Expression::parse("", 1, kQ), ParseError);

    // error positions point at the offending token
    try {
        Expression::parse("x1 + x9", 2, kQ);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position == 5);
    }

    // comments and whitespace
    CHECK(expand_of("x1 # trailing comment\n + x1", 1).coefficient(ReducedWord::single(1, 1)) ==
          kQ->from_int(2));

    // subtraction folds to a scaled addend
    CHECK(expand_of("x1 - x1", 1).is_zero());
    CHECK(expand_of("-2 + 2", 1).is_zero());
    CHECK(expand_of("x1 * -2 + 2*x1", 1).is_zero());
}

TEST_CASE("matrix evaluation") {
    Rng rng(5);
    MatrixAssignment a = random_assignment_matrices(kP, 2, 3, rng);

    Expression c = Expression::parse("7", 2, kP);
    CHECK(c.evaluate(a) == SquareMatrix::identity(kP, 3).scaled(kP->from_int(7)));

    Expression xi = Expression::parse("x1*x1^-1", 2, kP);
    CHECK(xi.evaluate(a).is_identity());

    // repeated squaring agrees with the naive product
    Expression pow = Expression::parse("x1^4", 2, kP);
    SquareMatrix naive = a.matrix(1) * a.matrix(1) * a.matrix(1) * a.matrix(1);
    CHECK(pow.evaluate(a) == naive);

    Expression ipow = Expression::parse("x2^-3", 2, kP);
    CHECK(ipow.evaluate(a) == a.inverse(2) * a.inverse(2) * a.inverse(2));
}

TEST_CASE("expansion oracle") {
    CHECK(expand_of("x1*x1^-1 - 1", 1).is_zero());

    AlgebraElement sq = expand_of("(x1+x2)*(x1+x2)", 2);
    CHECK(sq.sparsity() == 4);
    for (const auto& [w, coeff] : sq.terms()) CHECK(coeff == kQ->one());

    CHECK(expand_of("(x1+x2)*x2^-1 - x1*x2^-1 - 1", 2).is_zero());

    CHECK_THROWS_AS(Expression::parse("x1^100", 1, kQ).expand(64, 4096), GuardExceeded);
    CHECK_THROWS_AS(Expression::parse("(x1+x2)^13", 2, kQ).expand(64, 4096), GuardExceeded);
    try {
        Expression::parse("(1+x1)*(1+x2)*(1+x1)*(1+x2)", 2, kQ).expand(64, 4);
        FAIL("expected GuardExceeded");
    } catch (const GuardExceeded& g) {
        CHECK(g.kind == GuardExceeded::Kind::Sparsity);
    }
}

TEST_CASE("syntactic degree bound") {
    CHECK(Expression::parse("5", 1, kQ).syntactic_degree_bound() == 0);
    CHECK(Expression::parse("x1*x2^-1 + x2*x1^-1", 2, kQ).syntactic_degree_bound() == 2);
    CHECK(Expression::parse("x1^1048576", 1, kQ).syntactic_degree_bound() == 1048576);
    CHECK(Expression::parse("x1^65536*x2 - x2*x1^65536", 2, kQ).syntactic_degree_bound() == 65537);

    Rng rng(17);
    for (int it = 0; it < 200; ++it) {
        Expression e = random_expression(rng, 3, 4, kQ);
        try {
            AlgebraElement a = e.expand(4096, 1 << 20);
            CHECK(a.degree() <= e.syntactic_degree_bound());
        } catch (const GuardExceeded&) {
        }
    }
}

TEST_CASE("oracle and evaluator agree on random expressions") {
    Rng rng(99);
    int tested = 0;
    while (tested < 200) {
        Expression e = random_expression(rng, 3, 4, kP);
        AlgebraElement expanded(kP);
        try {
            expanded = e.expand(6, 512);
        } catch (const GuardExceeded&) {
            continue;
        }
        ++tested;
        for (int trial = 0; trial < 5; ++trial) {
            MatrixAssignment a = random_assignment_matrices(kP, 3, 2 + rng.below(3), rng);
            CHECK(e.evaluate(a) == expanded.evaluate(a));
        }
    }
}

TEST_CASE("printing round-trips through the parser") {
    Rng rng(123);
    for (int it = 0; it < 200; ++it) {
        Expression e = random_expression(rng, 3, 4, kP);
        std::string printed = e.str();
        Expression back = Expression::parse(printed, 3, kP);
        CHECK(back.str() == printed);
        // and the canonical forms agree
        try {
            CHECK(back.expand(64, 4096) == e.expand(64, 4096));
        } catch (const GuardExceeded&) {
        }
    }
}

TEST_CASE("formulas built from elements expand back to them") {
    Rng rng(31);
    for (const auto& f : {kQ, kP}) {
        for (int it = 0; it < 50; ++it) {
            AlgebraElement src = random_sparse_element(rng, f, 3, 5, 4, false);
            Expression e = Expression::from_algebra(src, 3);
            CHECK(e.expand(16, 1024) == src);
        }
    }
}

TEST_CASE("black box wraps expression evaluation") {
    Expression e = Expression::parse("x1*x2 - x2*x1", 2, kP);
    BlackBox bb = BlackBox::from_expression(e);
    CHECK(bb.alphabet() == 2);
    CHECK(bb.degree_bound() == 2);

    Rng rng(7);
    MatrixAssignment a = random_assignment_matrices(kP, 2, 3, rng);
    CHECK(bb(a) == e.evaluate(a));

    // subtracting the full expansion leaves the zero box
    BlackBox peeled = bb.minus(e.expand(8, 64));
    CHECK(peeled(a).is_zero());
}
