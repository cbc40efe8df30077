#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "fgpit/errors.hpp"
#include "fgpit/field.hpp"
#include "fgpit/matrix.hpp"
#include "fgpit/rng.hpp"
#include "support.hpp"

using namespace fgpit;
using fgpit::test::random_matrix;
using fgpit::test::random_nonsingular;
using fgpit::test::random_scalar;

TEST_CASE("field construction") {
    auto gf7 = Field::prime_field(7);
    CHECK(gf7->characteristic() == 7);
    CHECK(gf7->extension_degree() == 1);
    CHECK(gf7->str() == "7");

    auto q = Field::rationals();
    CHECK(q->is_rational());
    CHECK(q->str() == "Q");

    CHECK_THROWS_AS(Field::prime_field(6), std::invalid_argument);
    CHECK_THROWS_AS(Field::extension_field(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(Field::parse("4"), std::invalid_argument);

    CHECK(Field::parse("Q")->is_rational());
    CHECK(Field::parse("2305843009213693951")->characteristic() == kDefaultPrime);
    auto gf9 = Field::parse("3^2");
    CHECK(gf9->order() == 9);
}

TEST_CASE("GF(9) modulus matches exhaustive search over the 9 monic quadratics") {
    // brute-force oracle: x^2 + c1*x + c0 over GF(3) is irreducible iff it
    // has no root; scan in the library's documented index order (c0 fastest)
    std::vector<std::uint64_t> expected;
    bool found = false;
    int irreducible_count = 0;
    for (int idx = 0; idx < 9; ++idx) {
        std::uint64_t c0 = idx % 3, c1 = idx / 3;
        bool has_root = false;
        for (std::uint64_t r = 0; r < 3; ++r)
            if ((r * r + c1 * r + c0) % 3 == 0) has_root = true;
        if (!has_root) {
            ++irreducible_count;
            if (!found) {
                expected = {c0, c1, 1};
                found = true;
            }
        }
    }
    CHECK(irreducible_count == 3);  // x^2+1, x^2+x+2, x^2+2x+2
    auto gf9 = Field::extension_field(3, 2);
    CHECK(gf9->modulus() == expected);
    CHECK(gf9->modulus() == std::vector<std::uint64_t>{1, 0, 1});  // x^2 + 1
}

TEST_CASE("field axioms on random samples") {
    std::vector<FieldPtr> fields = {Field::rationals(),         Field::prime_field(2),
                                    Field::prime_field(3),      Field::prime_field(5),
                                    Field::prime_field(kDefaultPrime), Field::extension_field(2, 3),
                                    Field::extension_field(3, 2)};
    for (const auto& f : fields) {
        Rng rng(42);
        for (int i = 0; i < 1000; ++i) {
            Scalar a = random_scalar(f, rng), b = random_scalar(f, rng), c = random_scalar(f, rng);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK(a - a == f->zero());
            CHECK(a * f->one() == a);
            if (!a.is_zero()) CHECK(a * a.inverse() == f->one());
        }
    }
}

TEST_CASE("scalar canonical text") {
    auto q = Field::rationals();
    CHECK(q->from_rational(mpq_class(-2, 4)).str() == "-1/2");
    CHECK(q->from_int(7).str() == "7");
    auto gf7 = Field::prime_field(7);
    CHECK(gf7->from_int(-1).str() == "6");
    auto gf9 = Field::extension_field(3, 2);
    CHECK(gf9->element(5).str() == "[2,1]");
}

TEST_CASE("scalar embedding") {
    auto gf3 = Field::prime_field(3);
    auto gf9 = Field::extension_field(3, 2);
    CHECK(gf9->embed(gf3->from_int(2)) == gf9->from_int(2));
    auto q = Field::rationals();
    auto gfp = Field::prime_field(kDefaultPrime);
    CHECK(gfp->embed(q->from_rational(mpq_class(1, 2))) ==
          gfp->from_int(2).inverse());
    CHECK_THROWS_AS((void)gf3->embed(gf9->element(5)), std::invalid_argument);
}

TEST_CASE("matrix product basics") {
    auto f = Field::prime_field(kDefaultPrime);
    Rng rng(7);
    SquareMatrix a = random_matrix(f, 4, rng);
    CHECK(SquareMatrix::identity(f, 4) * a == a);
    CHECK(a * SquareMatrix::identity(f, 4) == a);

    SquareMatrix b(Field::prime_field(5), 4);
    CHECK_THROWS_AS(a * b, std::invalid_argument);
    SquareMatrix c(f, 3);
    CHECK_THROWS_AS(a * c, std::invalid_argument);
}

TEST_CASE("off-diagonal block and its closed-form inverse") {
    // [[0, y], [1/z, 0]] * [[0, z], [1/y, 0]] = I for any nonzero y, z
    for (const auto& f : {Field::rationals(), Field::prime_field(101)}) {
        Rng rng(3);
        for (int i = 0; i < 20; ++i) {
            Scalar y = f->sample_nonzero(rng), z = f->sample_nonzero(rng);
            SquareMatrix m(f, 2), w(f, 2);
            m.set(0, 1, y);
            m.set(1, 0, z.inverse());
            w.set(0, 1, z);
            w.set(1, 0, y.inverse());
            CHECK((m * w).is_identity());
            CHECK(m.inverse() == w);
        }
    }
}

TEST_CASE("adjacent unitriangular blocks accumulate b1*i + b2*j") {
    auto f = Field::rationals();
    auto nmat = [&](int label, int sign) {
        SquareMatrix n = SquareMatrix::identity(f, 4);
        n.set(1, 2, f->from_int(sign * label));
        return n;
    };
    for (int b1 : {1, -1})
        for (int b2 : {1, -1}) {
            SquareMatrix prod = nmat(1, b1) * nmat(2, b2);
            CHECK(prod.at(1, 2) == f->from_int(b1 * 1 + b2 * 2));
        }
}

TEST_CASE("matrix inverse") {
    auto f = Field::prime_field(kDefaultPrime);
    CHECK(SquareMatrix::identity(f, 3).inverse().is_identity());
    CHECK_THROWS_AS(SquareMatrix(f, 3).inverse(), SingularMatrix);

    for (std::size_t dim : {2, 4, 8, 16}) {
        Rng rng(1000 + dim);
        for (int i = 0; i < 100; ++i) {
            SquareMatrix inv(f, 1);
            SquareMatrix m = random_nonsingular(f, dim, rng, &inv);
            CHECK((m * inv).is_identity());
            CHECK((inv * m).is_identity());
        }
    }
    // exact rationals stay exact through elimination
    auto q = Field::rationals();
    Rng rng(5);
    for (int i = 0; i < 10; ++i) {
        SquareMatrix inv(q, 1);
        SquareMatrix m = random_nonsingular(q, 4, rng, &inv);
        CHECK((m * inv).is_identity());
    }
}

TEST_CASE("separating elements in characteristic 0 and large characteristic") {
    auto q = Field::rationals();
    auto sep = find_separating_elements(3, q);
    REQUIRE(sep.alphas.size() == 3);
    CHECK(sep.field->is_rational());
    for (int i = 0; i < 3; ++i) CHECK(sep.alphas[i] == q->from_int(i + 1));

    auto gf11 = Field::prime_field(11);
    auto sep11 = find_separating_elements(2, gf11);
    CHECK(sep11.field->same(*gf11));
    CHECK(sep11.alphas[0] == gf11->from_int(1));
    CHECK(sep11.alphas[1] == gf11->from_int(2));
}

TEST_CASE("separating elements over GF(3) live in GF(9)") {
    auto gf3 = Field::prime_field(3);
    auto sep = find_separating_elements(2, gf3);
    REQUIRE(sep.field->characteristic() == 3);
    CHECK(sep.field->extension_degree() == 2);

    // oracle: evaluate G(y) = (y + y^2)(y - y^2) over all of GF(9); the
    // returned alpha must be the first non-root in enumeration order and
    // alphas must be (alpha, alpha^2)
    auto gf9 = sep.field;
    mpz_class first_nonroot = -1;
    int nonroot_count = 0;
    for (mpz_class idx = 0; idx < 9; ++idx) {
        Scalar y = gf9->element(idx);
        Scalar g = (y + y * y) * (y - y * y);
        if (!g.is_zero()) {
            ++nonroot_count;
            if (first_nonroot < 0) first_nonroot = idx;
        }
    }
    CHECK(nonroot_count == 6);  // everything except 0, 1, -1
    Scalar alpha = gf9->element(first_nonroot);
    CHECK(sep.alphas[0] == alpha);
    CHECK(sep.alphas[1] == alpha * alpha);
}

TEST_CASE("separating condition verified exhaustively across characteristics") {
    std::vector<FieldPtr> fields = {Field::rationals(), Field::prime_field(2), Field::prime_field(3),
                                    Field::prime_field(5), Field::prime_field(kDefaultPrime)};
    for (const auto& base : fields) {
        for (int n = 1; n <= 16; ++n) {
            auto sep = find_separating_elements(n, base);
            REQUIRE(static_cast<int>(sep.alphas.size()) == n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    for (int bi : {1, -1})
                        for (int bj : {1, -1}) {
                            Scalar v = (bi > 0 ? sep.alphas[i] : -sep.alphas[i]) +
                                       (bj > 0 ? sep.alphas[j] : -sep.alphas[j]);
                            CHECK(!v.is_zero());
                        }
        }
    }
}

TEST_CASE("minimum field size requests extend the field") {
    auto gf11 = Field::prime_field(11);
    auto sep = find_separating_elements(2, gf11, 50);
    CHECK(sep.field->characteristic() == 11);
    CHECK(sep.field->order() >= 50);
    for (const auto& a : sep.alphas) CHECK(!a.is_zero());

    auto gf9 = Field::extension_field(3, 2);
    CHECK_THROWS_AS(find_separating_elements(2, gf9, 1000), FieldTooSmall);
}

TEST_CASE("sampling is deterministic per seed") {
    auto f = Field::prime_field(kDefaultPrime);
    Rng a(99), b(99), c(100);
    Scalar sa = f->sample_nonzero(a), sb = f->sample_nonzero(b), sc = f->sample_nonzero(c);
    CHECK(sa == sb);
    CHECK(sa != sc);
}
