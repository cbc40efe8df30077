#pragma once

#include <vector>

#include "fgpit/field.hpp"
#include "fgpit/matrix.hpp"
#include "fgpit/rng.hpp"

namespace fgpit::test {

inline Scalar random_scalar(const FieldPtr& f, Rng& rng) {
    // includes zero
    if (rng.below(8) == 0) return f->zero();
    return f->sample_nonzero(rng);
}

inline SquareMatrix random_matrix(const FieldPtr& f, std::size_t dim, Rng& rng) {
    SquareMatrix m(f, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) m.set(i, j, random_scalar(f, rng));
    return m;
}

inline SquareMatrix random_nonsingular(const FieldPtr& f, std::size_t dim, Rng& rng,
                                       SquareMatrix* inverse_out = nullptr) {
    for (;;) {
        SquareMatrix m = random_matrix(f, dim, rng);
        try {
            SquareMatrix inv = m.inverse();
            if (inverse_out) *inverse_out = inv;
            return m;
        } catch (const SingularMatrix&) {
        }
    }
}

}  // namespace fgpit::test
