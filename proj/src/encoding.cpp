#include "fgpit/encoding.hpp"

#include <stdexcept>

#include "fgpit/errors.hpp"

namespace fgpit {

namespace {

void check_assignment(const Assignment& a, int n, int positions, bool need_xi) {
    if (a.n() < n || a.positions() < positions)
        throw std::invalid_argument("assignment does not cover the requested generators/positions");
    if (static_cast<int>(a.alphas.size()) < n)
        throw std::invalid_argument("assignment is missing separating elements");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < positions; ++j) {
            if (a.y[i][j].is_zero() || a.z[i][j].is_zero())
                throw std::invalid_argument("assignment values must be nonzero");
        }
    if (need_xi) {
        if (static_cast<int>(a.xi.size()) < positions + 1)
            throw std::invalid_argument("assignment is missing block values");
        for (int j = 0; j <= positions; ++j)
            if (a.xi[j].is_zero()) throw std::invalid_argument("assignment values must be nonzero");
    }
    // pairwise separating condition on the alphas
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if ((a.alphas[i] + a.alphas[j]).is_zero() || (a.alphas[i] - a.alphas[j]).is_zero())
                throw std::invalid_argument("assignment alphas do not separate");
        }
}

}  // namespace

Assignment Assignment::prefix(int positions) const {
    if (positions > this->positions()) throw std::invalid_argument("prefix longer than assignment");
    Assignment r;
    r.field = field;
    r.alphas = alphas;
    r.y.reserve(y.size());
    r.z.reserve(z.size());
    for (const auto& row : y) r.y.emplace_back(row.begin(), row.begin() + positions);
    for (const auto& row : z) r.z.emplace_back(row.begin(), row.begin() + positions);
    if (!xi.empty()) r.xi.assign(xi.begin(), xi.begin() + positions + 1);
    return r;
}

Assignment random_assignment(const FieldPtr& field, int n, int positions, EncodingMode mode, Rng& rng,
                             const mpz_class& min_field_size) {
    if (n < 1 || positions < 0) throw std::invalid_argument("bad assignment shape");
    SeparatingElements sep = find_separating_elements(n, field, min_field_size);
    Assignment a;
    a.field = sep.field;
    a.alphas = std::move(sep.alphas);
    a.y.resize(n);
    a.z.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < positions; ++j) a.y[i].push_back(a.field->sample_nonzero(rng));
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < positions; ++j) a.z[i].push_back(a.field->sample_nonzero(rng));
    }
    if (mode == EncodingMode::Sparsity)
        for (int j = 0; j <= positions; ++j) a.xi.push_back(a.field->sample_nonzero(rng));
    return a;
}

int sparsity_block_count(std::int64_t s_bound) {
    if (s_bound < 1) throw std::invalid_argument("sparsity bound must be positive");
    int k = 0;
    while ((std::int64_t{1} << k) < s_bound) ++k;
    return k;
}

DegreeEncoding build_degree_encoding(int n, int d, const Assignment& a) {
    if (d < 1) throw std::invalid_argument("degree must be positive");
    check_assignment(a, n, d, /*need_xi=*/false);
    const FieldPtr& f = a.field;
    const std::size_t dim = 2 * static_cast<std::size_t>(d);

    std::vector<std::pair<SquareMatrix, SquareMatrix>> pairs;
    pairs.reserve(n);
    for (int i = 0; i < n; ++i) {
        SquareMatrix m(f, dim), minv(f, dim);
        for (int p = 0; p < d; ++p) {
            const std::size_t o = 2 * static_cast<std::size_t>(p);
            m.set(o, o + 1, a.y[i][p]);
            m.set(o + 1, o, a.z[i][p].inverse());
            minv.set(o, o + 1, a.z[i][p]);
            minv.set(o + 1, o, a.y[i][p].inverse());
        }
        SquareMatrix nmat = SquareMatrix::identity(f, dim);
        SquareMatrix ninv = SquareMatrix::identity(f, dim);
        for (int b = 0; b < d - 1; ++b) {
            const std::size_t o = 1 + 2 * static_cast<std::size_t>(b);
            nmat.set(o, o + 1, a.alphas[i]);
            ninv.set(o, o + 1, -a.alphas[i]);
        }
        pairs.emplace_back(nmat * m * nmat, ninv * minv * ninv);
    }
    return DegreeEncoding{n, d, MatrixAssignment(std::move(pairs))};
}

SparsityEncoding build_sparsity_encoding(int n, std::int64_t s_bound, const Assignment& a) {
    const int kp = sparsity_block_count(s_bound);
    check_assignment(a, n, kp, /*need_xi=*/true);
    const FieldPtr& f = a.field;
    const std::size_t dim = 4 * static_cast<std::size_t>(kp + 1);

    std::vector<std::pair<SquareMatrix, SquareMatrix>> pairs;
    pairs.reserve(n);
    for (int i = 0; i < n; ++i) {
        SquareMatrix nmat = SquareMatrix::identity(f, dim);
        SquareMatrix ninv = SquareMatrix::identity(f, dim);
        for (int b = 0; b <= kp; ++b) {
            const std::size_t o = 4 * static_cast<std::size_t>(b);
            for (auto [r, c] : {std::pair{0, 1}, {2, 3}, {2, 1}, {0, 3}}) {
                nmat.set(o + r, o + c, a.alphas[i]);
                ninv.set(o + r, o + c, -a.alphas[i]);
            }
        }
        SquareMatrix m(f, dim), minv(f, dim);
        m.set(0, 0, f->one());
        minv.set(0, 0, f->one());
        m.set(dim - 1, dim - 1, f->one());
        minv.set(dim - 1, dim - 1, f->one());
        for (int j = 0; j <= kp; ++j) {
            // block value swap: these 2x2 blocks are involutions
            const std::size_t o = 4 * static_cast<std::size_t>(j) + 1;
            m.set(o, o + 1, a.xi[j]);
            m.set(o + 1, o, a.xi[j].inverse());
            minv.set(o, o + 1, a.xi[j]);
            minv.set(o + 1, o, a.xi[j].inverse());
        }
        for (int j = 0; j < kp; ++j) {
            const std::size_t o = 4 * static_cast<std::size_t>(j) + 3;
            m.set(o, o + 1, a.y[i][j]);
            m.set(o + 1, o, a.z[i][j].inverse());
            minv.set(o, o + 1, a.z[i][j]);
            minv.set(o + 1, o, a.y[i][j].inverse());
        }
        pairs.emplace_back(nmat * m * nmat, ninv * minv * ninv);
    }
    return SparsityEncoding{n, kp, MatrixAssignment(std::move(pairs))};
}

Scalar scalar_factor(const ReducedWord& word, std::span<const Scalar> alphas) {
    if (word.empty()) throw std::invalid_argument("scalar factor of the empty word is undefined");
    const auto& letters = word.letters();
    for (const Letter& l : letters)
        if (static_cast<std::size_t>(l.generator) > alphas.size())
            throw std::invalid_argument("word uses a generator without a separating element");
    Scalar acc = alphas.front().field()->one();
    for (std::size_t j = 0; j + 1 < letters.size(); ++j) {
        const Scalar& ai = alphas[letters[j].generator - 1];
        const Scalar& aj = alphas[letters[j + 1].generator - 1];
        Scalar term = (letters[j].sign > 0 ? ai : -ai) + (letters[j + 1].sign > 0 ? aj : -aj);
        acc = acc * term;
    }
    return acc;
}

const Scalar& top_entry(const SquareMatrix& m) { return m.at(0, m.dim() - 1); }

}  // namespace fgpit
