#pragma once

#include <cstdint>
#include <optional>

#include <gmpxx.h>

#include "fgpit/algebra.hpp"
#include "fgpit/encoding.hpp"
#include "fgpit/expression.hpp"
#include "fgpit/field.hpp"

namespace fgpit {

enum class VerdictKind { Zero, NonZero };

/// Everything needed to replay a NonZero reading: the mode and dimension, the
/// trial coordinates in the seeded stream, and the assignment itself. For the
/// constant-term probe the assignment is absent; the reading is then the
/// (1,1) entry of the evaluation at the all-ones scalars.
struct Witness {
    EncodingMode mode;
    std::size_t dim = 0;
    std::uint64_t master_seed = 0;
    int trial_index = 0;
    int level = 0;  // sweep degree (degree mode) or block count (sparsity mode)
    std::optional<Assignment> assignment;
    Scalar entry;
};

struct Verdict {
    VerdictKind kind;
    std::optional<Witness> witness;  // present iff NonZero
    int trials_used = 0;
    mpq_class per_trial_error_bound;  // exact; 0 for an identically-zero guarantee direction
};

/// Randomized identity test for expressions of degree at most d_bound.
/// One-sided: an identically zero black box always yields Zero. Each trial
/// draws one assignment, sweeps the encodings of dimension 2*l for
/// l = d_bound..1 reading the top entry, then probes the constant term at
/// the all-ones scalars. For a nonzero input of exact degree l the sweep's
/// dimension-2l reading is a uniform evaluation of a nonzero degree-l
/// polynomial, so a trial misses with probability at most
/// d_bound / (sampling set size). Small fields are extended automatically
/// (separating elements and Schwartz-Zippel headroom).
Verdict check_degree_mode(const BlackBox& bb, int n, std::int64_t d_bound, const FieldPtr& field,
                          int trials, std::uint64_t seed);

/// Randomized identity test for expressions of degree at most degree_bound
/// and sparsity at most s_bound, on matrices of dimension at most
/// 4*(ceil(log2 s_bound)+1) — logarithmic in the sparsity, independent of the
/// degree. One trial sweeps the sparsity encodings from the full block count
/// down to zero reading the top entry (an expression is caught at the size of
/// the isolating index set of its maximal-degree words, which may be any
/// value up to the bound), plus the constant-term probe. The working field
/// must exceed 8*n*degree_bound*(block_count+1) (the cleared-numerator degree
/// bound with headroom); smaller fields are extended automatically.
Verdict check_sparse_mode(const BlackBox& bb, int n, std::int64_t degree_bound, std::int64_t s_bound,
                          const FieldPtr& field, int trials, std::uint64_t seed);

/// Deterministic exact reconstruction of a black box of degree <= d_bound and
/// sparsity <= s_bound. Peels homogeneous layers top down: interpolates the
/// encoded layer from the top entry of degree encodings at deterministic
/// points, divides out the per-word scalar factors, inverts the word
/// encoding, and subtracts the layer from the black box; the constant term
/// comes from the all-ones probe. Requires characteristic 0 or a prime field
/// with p > 2n large enough for the interpolation points.
AlgebraElement reconstruct(const BlackBox& bb, int n, int d_bound, std::int64_t s_bound,
                           const FieldPtr& field);

}  // namespace fgpit
