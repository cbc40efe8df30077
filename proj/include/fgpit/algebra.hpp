#pragma once

#include <map>
#include <string>

#include "fgpit/field.hpp"
#include "fgpit/matrix.hpp"
#include "fgpit/word.hpp"

namespace fgpit {

/// Sparse element of the free group algebra: a finite map from reduced words
/// to nonzero coefficients. Zero coefficients are pruned eagerly, so the term
/// map is canonical; iteration follows the canonical word order.
class AlgebraElement {
  public:
    explicit AlgebraElement(FieldPtr field) : field_(std::move(field)) {}
    static AlgebraElement constant(const Scalar& c);
    static AlgebraElement from_word(const FieldPtr& field, const ReducedWord& w);
    static AlgebraElement from_word(const FieldPtr& field, const ReducedWord& w, const Scalar& coeff);

    const FieldPtr& field() const { return field_; }
    const std::map<ReducedWord, Scalar>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    int degree() const;  // -1 for the zero element
    std::size_t sparsity() const { return terms_.size(); }
    Scalar coefficient(const ReducedWord& w) const;
    AlgebraElement homogeneous_part(int deg) const;

    AlgebraElement& add_term(const ReducedWord& w, const Scalar& coeff);

    AlgebraElement operator+(const AlgebraElement& o) const;
    AlgebraElement operator-(const AlgebraElement& o) const;
    AlgebraElement operator*(const AlgebraElement& o) const;
    AlgebraElement scaled(const Scalar& c) const;
    bool operator==(const AlgebraElement& o) const;

    // Homomorphic evaluation: x_i -> matrix(i), x_i^-1 -> inverse(i), 1 -> I.
    SquareMatrix evaluate(const MatrixAssignment& assignment) const;

    // JSON list of {"word": ..., "coeff": ...} in canonical word order.
    std::string to_json() const;
    std::string str() const;

  private:
    void check_field(const AlgebraElement& o) const;

    FieldPtr field_;
    std::map<ReducedWord, Scalar> terms_;
};

}  // namespace fgpit
