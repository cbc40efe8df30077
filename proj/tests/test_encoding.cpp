#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "fgpit/algebra.hpp"
#include "fgpit/encoding.hpp"
#include "fgpit/errors.hpp"
#include "fgpit/expression.hpp"
#include "fgpit/rng.hpp"

using namespace fgpit;

namespace {

const FieldPtr kQ = Field::rationals();
const FieldPtr kP = Field::prime_field(kDefaultPrime);

// assignment with alphas 1..n and chosen values (all nonzero)
Assignment fixed_assignment(const FieldPtr& f, int n, int positions, bool with_blocks, Rng& rng) {
    Assignment a;
    a.field = f;
    for (int i = 1; i <= n; ++i) a.alphas.push_back(f->from_int(i));
    a.y.resize(n);
    a.z.resize(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < positions; ++j) {
            a.y[i].push_back(f->sample_nonzero(rng));
            a.z[i].push_back(f->sample_nonzero(rng));
        }
    if (with_blocks)
        for (int j = 0; j <= positions; ++j) a.xi.push_back(f->sample_nonzero(rng));
    return a;
}

// the 2x2 building block [[0, y], [1/z, 0]] placed at a diagonal offset
void put_block(SquareMatrix& m, std::size_t offset, const Scalar& top, const Scalar& bottom_inv) {
    m.set(offset, offset + 1, top);
    m.set(offset + 1, offset, bottom_inv.inverse());
}

std::vector<ReducedWord> all_reduced_words(int n, int degree) {
    std::vector<ReducedWord> out;
    std::vector<Letter> current;
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(current.size()) == degree) {
            out.push_back(ReducedWord::reduce(current));
            return;
        }
        for (int g = 1; g <= n; ++g)
            for (int s : {1, -1}) {
                Letter l{g, s};
                if (!current.empty() && current.back() == l.inverse()) continue;
                current.push_back(l);
                self(self);
                current.pop_back();
            }
    };
    rec(rec);
    return out;
}

Scalar expected_top_entry(const ReducedWord& w, const Assignment& a) {
    Scalar v = scalar_factor(w, a.alphas);
    int pos = 0;
    for (const Letter& l : w.letters()) {
        v = v * (l.sign > 0 ? a.y[l.generator - 1][pos] : a.z[l.generator - 1][pos]);
        ++pos;
    }
    return v;
}

}  // namespace

TEST_CASE("dimension-4 matrices match the closed-form displays") {
    Rng rng(1);
    Assignment a = fixed_assignment(kQ, 2, 2, false, rng);
    DegreeEncoding enc = build_degree_encoding(2, 2, a);
    CHECK(enc.dim() == 4);

    for (int i = 1; i <= 2; ++i) {
        // N_i = diag(1, [[1, alpha_i], [0, 1]], 1)
        SquareMatrix nmat = SquareMatrix::identity(kQ, 4);
        nmat.set(1, 2, a.alphas[i - 1]);
        SquareMatrix ninv = SquareMatrix::identity(kQ, 4);
        ninv.set(1, 2, -a.alphas[i - 1]);

        // M_i = diag([[0, y_i1], [1/z_i1, 0]], [[0, y_i2], [1/z_i2, 0]])
        SquareMatrix m(kQ, 4), minv(kQ, 4);
        put_block(m, 0, a.y[i - 1][0], a.z[i - 1][0]);
        put_block(m, 2, a.y[i - 1][1], a.z[i - 1][1]);
        put_block(minv, 0, a.z[i - 1][0], a.y[i - 1][0]);
        put_block(minv, 2, a.z[i - 1][1], a.y[i - 1][1]);

        CHECK((m * minv).is_identity());
        CHECK(enc.matrices.matrix(i) == nmat * m * nmat);
        CHECK(enc.matrices.inverse(i) == ninv * minv * ninv);
        CHECK((enc.matrices.matrix(i) * enc.matrices.inverse(i)).is_identity());
    }
}

TEST_CASE("one-position encoding degenerates to the bare block") {
    Rng rng(2);
    Assignment a = fixed_assignment(kQ, 2, 1, false, rng);
    DegreeEncoding enc = build_degree_encoding(2, 1, a);
    CHECK(enc.dim() == 2);
    for (int i = 1; i <= 2; ++i) {
        SquareMatrix block(kQ, 2);
        put_block(block, 0, a.y[i - 1][0], a.z[i - 1][0]);
        CHECK(enc.matrices.matrix(i) == block);
    }
}

TEST_CASE("assignment validation") {
    Rng rng(3);
    Assignment a = fixed_assignment(kQ, 2, 2, false, rng);
    a.y[0][1] = kQ->zero();
    CHECK_THROWS_AS(build_degree_encoding(2, 2, a), std::invalid_argument);
    a.y[0][1] = kQ->one();
    a.alphas[1] = a.alphas[0];  // 1 - 1 = 0 breaks separation
    CHECK_THROWS_AS(build_degree_encoding(2, 2, a), std::invalid_argument);
}

TEST_CASE("per-word scalar factor") {
    std::vector<Scalar> alphas{kQ->from_int(1), kQ->from_int(2)};
    ReducedWord w = ReducedWord::single(1, 1) * ReducedWord::single(2, -1);
    CHECK(scalar_factor(w, alphas) == kQ->from_int(-1));  // 1*1 + (-1)*2

    CHECK(scalar_factor(ReducedWord::single(2, 1), alphas) == kQ->one());  // empty product

    ReducedWord w2 = ReducedWord::single(2, 1) * ReducedWord::single(1, -1);
    CHECK(scalar_factor(w2, alphas) == kQ->from_int(1));  // 2 - 1

    CHECK_THROWS_AS(scalar_factor(ReducedWord{}, alphas), std::invalid_argument);
}

TEST_CASE("scalar factor never vanishes with separating alphas") {
    // characteristic 0 with alphas 1..n
    for (int n = 1; n <= 3; ++n) {
        auto sep = find_separating_elements(n, kQ);
        for (int d = 1; d <= 4; ++d)
            for (const auto& w : all_reduced_words(n, d))
                CHECK(!scalar_factor(w, sep.alphas).is_zero());
    }
    // characteristic 3 with extension-field alphas
    auto gf3 = Field::prime_field(3);
    for (int n = 1; n <= 3; ++n) {
        auto sep = find_separating_elements(n, gf3);
        for (int d = 1; d <= 4; ++d)
            for (const auto& w : all_reduced_words(n, d))
                CHECK(!scalar_factor(w, sep.alphas).is_zero());
    }
}

TEST_CASE("top entry reads (1, dim)") {
    CHECK(top_entry(SquareMatrix::identity(kQ, 4)) == kQ->zero());
    SquareMatrix m(kQ, 3);
    m.set(0, 2, kQ->from_int(9));
    CHECK(top_entry(m) == kQ->from_int(9));
}

TEST_CASE("words of the exact degree reach the corner with the predicted value") {
    for (int d = 1; d <= 3; ++d) {
        const auto words = all_reduced_words(2, d);
        for (int trial = 0; trial < 5; ++trial) {
            Rng rng(100 * d + trial);
            Assignment a = fixed_assignment(kP, 2, d, false, rng);
            DegreeEncoding enc = build_degree_encoding(2, d, a);
            for (const auto& w : words) {
                SquareMatrix r = AlgebraElement::from_word(kP, w).evaluate(enc.matrices);
                CHECK(top_entry(r) == expected_top_entry(w, a));
            }
        }
    }
}

TEST_CASE("words below the encoding degree contribute nothing to the corner") {
    for (int d = 2; d <= 3; ++d) {
        Rng rng(7 + d);
        Assignment a = fixed_assignment(kP, 2, d, false, rng);
        DegreeEncoding enc = build_degree_encoding(2, d, a);
        for (int shorter = 0; shorter < d; ++shorter)
            for (const auto& w : all_reduced_words(2, shorter)) {
                SquareMatrix r = AlgebraElement::from_word(kP, w).evaluate(enc.matrices);
                CHECK(top_entry(r) == kP->zero());
            }
    }
}

TEST_CASE("identically zero expressions vanish on both encodings") {
    Expression zero = Expression::parse("x1*x1^-1 - 1", 2, kP);
    REQUIRE(zero.expand(8, 64).is_zero());
    for (int seed = 0; seed < 5; ++seed) {
        Rng rng(seed);
        Assignment a = fixed_assignment(kP, 2, 3, true, rng);
        CHECK(zero.evaluate(build_degree_encoding(2, 3, a).matrices).is_zero());
        CHECK(zero.evaluate(build_sparsity_encoding(2, 8, a).matrices).is_zero());
    }
}

TEST_CASE("sparsity encoding block structure") {
    CHECK(sparsity_block_count(1) == 0);
    CHECK(sparsity_block_count(2) == 1);
    CHECK(sparsity_block_count(8) == 3);
    CHECK(sparsity_block_count(9) == 4);

    Rng rng(11);
    Assignment a1 = fixed_assignment(kQ, 1, 0, true, rng);
    CHECK(build_sparsity_encoding(1, 1, a1).dim() == 4);
    Assignment a8 = fixed_assignment(kQ, 2, 3, true, rng);
    CHECK(build_sparsity_encoding(2, 8, a8).dim() == 16);
    CHECK((a8.prefix(1), build_sparsity_encoding(2, 2, a8.prefix(1)).dim()) == 8);

    // the smallest case matches the closed-form displays:
    // N' = I4 + alpha*(e12 + e34 + e32 + e14),  M = diag(1, xi-block, 1)
    Assignment a = fixed_assignment(kQ, 1, 0, true, rng);
    SparsityEncoding enc = build_sparsity_encoding(1, 1, a);
    SquareMatrix nmat = SquareMatrix::identity(kQ, 4);
    for (auto [r, c] : {std::pair{0, 1}, {2, 3}, {2, 1}, {0, 3}}) nmat.set(r, c, a.alphas[0]);
    SquareMatrix m(kQ, 4);
    m.set(0, 0, kQ->one());
    m.set(3, 3, kQ->one());
    put_block(m, 1, a.xi[0], a.xi[0]);
    CHECK(enc.matrices.matrix(1) == nmat * m * nmat);
    CHECK((enc.matrices.matrix(1) * enc.matrices.inverse(1)).is_identity());
    CHECK((m * m).is_identity());  // the xi block is an involution
}

TEST_CASE("adjacent sparsity blocks accumulate b1*alpha_i + b2*alpha_j") {
    auto nprime = [&](const Scalar& alpha, bool inverted) {
        SquareMatrix n = SquareMatrix::identity(kQ, 4);
        Scalar v = inverted ? -alpha : alpha;
        for (auto [r, c] : {std::pair{0, 1}, {2, 3}, {2, 1}, {0, 3}}) n.set(r, c, v);
        return n;
    };
    Scalar a1 = kQ->from_int(1), a2 = kQ->from_int(2);
    for (bool inv1 : {false, true})
        for (bool inv2 : {false, true}) {
            SquareMatrix prod = nprime(a1, inv1) * nprime(a2, inv2);
            Scalar expect = (inv1 ? -a1 : a1) + (inv2 ? -a2 : a2);
            for (auto [r, c] : {std::pair{0, 1}, {2, 3}, {2, 1}, {0, 3}}) {
                CHECK(prod.at(r, c) == expect);
            }
            for (std::size_t i = 0; i < 4; ++i) CHECK(prod.at(i, i) == kQ->one());
            CHECK(prod.at(1, 0) == kQ->zero());
            CHECK(prod.at(3, 0) == kQ->zero());
        }
}

TEST_CASE("single words are detected by the dimension-4 sparsity encoding") {
    Rng rng(13);
    for (int it = 0; it < 100; ++it) {
        int degree = 1 + static_cast<int>(rng.below(50));
        ReducedWord w = random_reduced_word(rng, 3, degree);
        Assignment a = random_assignment(kP, 3, 0, EncodingMode::Sparsity, rng);
        SparsityEncoding enc = build_sparsity_encoding(3, 1, a);
        SquareMatrix r = AlgebraElement::from_word(kP, w).evaluate(enc.matrices);
        CHECK(!top_entry(r).is_zero());
    }
}

TEST_CASE("random assignments are reproducible and nonzero") {
    Rng r1(77), r2(77), r3(78);
    Assignment a = random_assignment(kP, 2, 3, EncodingMode::Sparsity, r1);
    Assignment b = random_assignment(kP, 2, 3, EncodingMode::Sparsity, r2);
    Assignment c = random_assignment(kP, 2, 3, EncodingMode::Sparsity, r3);

    bool same_ab = true, same_ac = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) {
            same_ab = same_ab && a.y[i][j] == b.y[i][j] && a.z[i][j] == b.z[i][j];
            same_ac = same_ac && a.y[i][j] == c.y[i][j];
            CHECK(!a.y[i][j].is_zero());
            CHECK(!a.z[i][j].is_zero());
        }
    for (int j = 0; j <= 3; ++j) CHECK(!a.xi[j].is_zero());
    CHECK(same_ab);
    CHECK(!same_ac);

    // small fields are extended to satisfy the size request
    Rng r4(79);
    Assignment small = random_assignment(Field::prime_field(3), 2, 2, EncodingMode::Degree, r4, 100);
    CHECK(small.field->characteristic() == 3);
    CHECK(small.field->order() >= 100);
}
