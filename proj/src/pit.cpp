#include "fgpit/pit.hpp"

#include <stdexcept>

#include "fgpit/commpoly.hpp"
#include "fgpit/errors.hpp"
#include "fgpit/interpolate.hpp"

namespace fgpit {

namespace {

mpq_class error_bound(const mpz_class& numerator_degree, const FieldPtr& working_field) {
    if (numerator_degree <= 0) return mpq_class(0);
    mpq_class b(numerator_degree, working_field->sample_set_size());
    b.canonicalize();
    if (b > 1) return mpq_class(1);
    return b;
}

std::optional<Witness> constant_probe(const BlackBox& bb, const FieldPtr& field, EncodingMode mode,
                                      std::uint64_t seed, int trial) {
    SquareMatrix r = bb(MatrixAssignment::all_ones(field, bb.alphabet()));
    if (r.at(0, 0).is_zero()) return std::nullopt;
    Witness w{mode, 1, seed, trial, 0, std::nullopt, r.at(0, 0)};
    return w;
}

}  // namespace

Verdict check_degree_mode(const BlackBox& bb, int n, std::int64_t d_bound, const FieldPtr& field,
                          int trials, std::uint64_t seed) {
    if (n < 1 || bb.alphabet() > n) throw std::invalid_argument("bad alphabet size");
    if (d_bound < 0) throw std::invalid_argument("degree bound must be nonnegative");
    if (trials < 1) throw std::invalid_argument("need at least one trial");

    // Schwartz-Zippel headroom: the sampling field must have more than
    // 4*d_bound nonzero elements.
    const mpz_class min_size = 4 * mpz_class(d_bound) + 2;
    const FieldPtr working = find_separating_elements(n, field, min_size).field;
    const mpq_class bound = error_bound(d_bound, working);

    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(trial));
        Assignment a =
            random_assignment(field, n, static_cast<int>(d_bound), EncodingMode::Degree, rng, min_size);
        for (std::int64_t level = d_bound; level >= 1; --level) {
            Assignment used = a.prefix(static_cast<int>(level));
            DegreeEncoding enc = build_degree_encoding(n, static_cast<int>(level), used);
            const Scalar e = top_entry(bb(enc.matrices));
            if (!e.is_zero()) {
                Witness w{EncodingMode::Degree, enc.dim(),          seed,
                          trial,                static_cast<int>(level), std::move(used),
                          e};
                return Verdict{VerdictKind::NonZero, std::move(w), trial + 1, bound};
            }
        }
        if (auto w = constant_probe(bb, field, EncodingMode::Degree, seed, trial))
            return Verdict{VerdictKind::NonZero, std::move(w), trial + 1, bound};
    }
    return Verdict{VerdictKind::Zero, std::nullopt, trials, bound};
}

Verdict check_sparse_mode(const BlackBox& bb, int n, std::int64_t degree_bound, std::int64_t s_bound,
                          const FieldPtr& field, int trials, std::uint64_t seed) {
    if (n < 1 || bb.alphabet() > n) throw std::invalid_argument("bad alphabet size");
    if (degree_bound < 0) throw std::invalid_argument("degree bound must be nonnegative");
    if (s_bound < 1) throw std::invalid_argument("sparsity bound must be positive");
    if (trials < 1) throw std::invalid_argument("need at least one trial");

    const int blocks = sparsity_block_count(s_bound);
    // Field-size policy with headroom constant 8: the top entry clears to a
    // numerator of degree at most (2*n*blocks + 1)*degree_bound over the
    // sampled values.
    const mpz_class min_size = 8 * mpz_class(n) * degree_bound * (blocks + 1) + 2;
    const FieldPtr working = find_separating_elements(n, field, min_size).field;
    const mpz_class numerator_degree = (2 * mpz_class(n) * blocks + 1) * degree_bound;
    const mpq_class bound = error_bound(numerator_degree, working);

    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(trial));
        Assignment a = random_assignment(field, n, blocks, EncodingMode::Sparsity, rng, min_size);
        // Sweep the block count downward: the isolating set of the maximal-
        // degree words has some size level <= blocks (never more than the
        // degree itself), and the claim holds at exactly that level. A word
        // passes at most one encode block per letter, so the top reading at
        // a level above the expression's degree is identically zero.
        for (int level = blocks; level >= 0; --level) {
            Assignment used = a.prefix(level);
            SparsityEncoding enc = build_sparsity_encoding(n, std::int64_t{1} << level, used);
            const Scalar e = top_entry(bb(enc.matrices));
            if (!e.is_zero()) {
                Witness w{EncodingMode::Sparsity, enc.dim(), seed, trial, level, std::move(used), e};
                return Verdict{VerdictKind::NonZero, std::move(w), trial + 1, bound};
            }
        }
        if (auto w = constant_probe(bb, field, EncodingMode::Sparsity, seed, trial))
            return Verdict{VerdictKind::NonZero, std::move(w), trial + 1, bound};
    }
    return Verdict{VerdictKind::Zero, std::nullopt, trials, bound};
}

AlgebraElement reconstruct(const BlackBox& bb, int n, int d_bound, std::int64_t s_bound,
                           const FieldPtr& field) {
    if (n < 1 || bb.alphabet() > n) throw std::invalid_argument("bad alphabet size");
    if (d_bound < 0) throw std::invalid_argument("degree bound must be nonnegative");
    if (s_bound < 1) throw std::invalid_argument("sparsity bound must be positive");

    SeparatingElements sep = find_separating_elements(n, field);
    if (!sep.field->same(*field))
        throw FieldTooSmall("reconstruction requires characteristic 0 or a prime field with p > 2n");
    const std::vector<Scalar>& alphas = sep.alphas;

    AlgebraElement result(field);
    BlackBox residual = bb;

    for (int level = d_bound; level >= 1; --level) {
        std::vector<CommVar> vars;
        std::vector<std::vector<std::size_t>> groups(level);
        for (int j = 1; j <= level; ++j) {
            for (int i = 1; i <= n; ++i) {
                groups[j - 1].push_back(vars.size());
                vars.push_back(CommVar::y(i, j));
                groups[j - 1].push_back(vars.size());
                vars.push_back(CommVar::z(i, j));
            }
        }

        CommBlackBox cbb = [&](std::span<const Scalar> point) -> Scalar {
            Assignment a;
            a.field = field;
            a.alphas = alphas;
            a.y.resize(n);
            a.z.resize(n);
            for (int i = 0; i < n; ++i) {
                a.y[i].reserve(level);
                a.z[i].reserve(level);
                for (int j = 0; j < level; ++j) {
                    const std::size_t base =
                        2 * (static_cast<std::size_t>(n) * static_cast<std::size_t>(j) +
                             static_cast<std::size_t>(i));
                    a.y[i].push_back(point[base]);
                    a.z[i].push_back(point[base + 1]);
                }
            }
            DegreeEncoding enc = build_degree_encoding(n, level, a);
            return top_entry(residual(enc.matrices));
        };

        CommPoly image = sparse_interpolate(cbb, vars, level, s_bound, field, &groups);

        AlgebraElement layer(field);
        for (const auto& [mono, coeff] : image.terms()) {
            ReducedWord word = word_encoding_inverse(mono);
            if (static_cast<int>(word.degree()) != level)
                throw SparsityExceeded("shorter word leaked into the top entry; bounds violated");
            layer.add_term(word, coeff * scalar_factor(word, alphas).inverse());
        }
        if (!layer.is_zero()) {
            result = result + layer;
            residual = residual.minus(layer);
        }
    }

    SquareMatrix ones = residual(MatrixAssignment::all_ones(field, n));
    result.add_term(ReducedWord{}, ones.at(0, 0));
    return result;
}

}  // namespace fgpit
