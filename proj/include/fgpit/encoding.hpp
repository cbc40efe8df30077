#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fgpit/field.hpp"
#include "fgpit/matrix.hpp"
#include "fgpit/rng.hpp"
#include "fgpit/word.hpp"

namespace fgpit {

enum class EncodingMode { Degree, Sparsity };

/// Scalar values substituted into the encoding matrices: per-generator,
/// per-position y and z values, block values (sparsity mode only), and the
/// separating elements. All y/z/xi values must be nonzero, since their
/// reciprocals appear in the matrices.
struct Assignment {
    FieldPtr field;                      // working field; may extend the input field
    std::vector<std::vector<Scalar>> y;  // y[i-1][j-1]
    std::vector<std::vector<Scalar>> z;
    std::vector<Scalar> xi;              // sparsity mode: one per block, size positions+1
    std::vector<Scalar> alphas;          // size n

    int n() const { return static_cast<int>(y.size()); }
    int positions() const { return y.empty() ? 0 : static_cast<int>(y.front().size()); }

    // Restriction to the first `positions` word positions.
    Assignment prefix(int positions) const;
};

/// Uniform nonzero values over the working field determined by
/// find_separating_elements(n, field, min_field_size). Deterministic for a
/// fixed rng stream.
Assignment random_assignment(const FieldPtr& field, int n, int positions, EncodingMode mode, Rng& rng,
                             const mpz_class& min_field_size = 0);

/// Number of per-position blocks in the sparsity encoding for a sparsity
/// bound s: ceil(log2 s), and 0 for s <= 1.
int sparsity_block_count(std::int64_t s_bound);

/// Per-generator invertible pairs of dimension 2d. Words of degree exactly d
/// reach the top-right corner with a nonzero per-word scalar factor; shorter
/// words contribute nothing there.
struct DegreeEncoding {
    int n;
    int d;
    MatrixAssignment matrices;
    std::size_t dim() const { return matrices.dim(); }
};

DegreeEncoding build_degree_encoding(int n, int d, const Assignment& a);

/// Per-generator invertible pairs of dimension 4*(block_count+1); detects
/// nonzero expressions of bounded sparsity at any degree.
struct SparsityEncoding {
    int n;
    int block_count;  // k'
    MatrixAssignment matrices;
    std::size_t dim() const { return matrices.dim(); }
};

SparsityEncoding build_sparsity_encoding(int n, std::int64_t s_bound, const Assignment& a);

/// The per-word scalar picked up between adjacent letters:
/// prod_{j=1}^{l-1} (b_j * alpha_{i_j} + b_{j+1} * alpha_{i_{j+1}}).
/// Nonzero for every reduced word when the alphas separate and the
/// characteristic is not 2.
Scalar scalar_factor(const ReducedWord& word, std::span<const Scalar> alphas);

/// Entry (1, dim) of an evaluation result, 1-based.
const Scalar& top_entry(const SquareMatrix& m);

}  // namespace fgpit
