#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "fgpit/field.hpp"

namespace fgpit {

/// Dense square matrix over one field, row-major, exact arithmetic.
class SquareMatrix {
  public:
    SquareMatrix(FieldPtr field, std::size_t dim);  // zero matrix
    static SquareMatrix identity(const FieldPtr& field, std::size_t dim);

    std::size_t dim() const { return dim_; }
    const FieldPtr& field() const { return field_; }

    const Scalar& at(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
    void set(std::size_t row, std::size_t col, Scalar v) { entries_[row * dim_ + col] = std::move(v); }

    SquareMatrix operator*(const SquareMatrix& o) const;
    SquareMatrix operator+(const SquareMatrix& o) const;
    SquareMatrix operator-(const SquareMatrix& o) const;
    SquareMatrix scaled(const Scalar& c) const;
    bool operator==(const SquareMatrix& o) const;

    // Exact inverse by Gaussian elimination; throws SingularMatrix.
    SquareMatrix inverse() const;

    bool is_zero() const;
    bool is_identity() const;

  private:
    void check_compatible(const SquareMatrix& o) const;

    FieldPtr field_;
    std::size_t dim_;
    std::vector<Scalar> entries_;
};

/// Per-generator matrix/inverse pairs used to evaluate expressions. Each pair
/// is checked to multiply to the identity at construction; dimensions and
/// fields must agree across generators.
class MatrixAssignment {
  public:
    explicit MatrixAssignment(std::vector<std::pair<SquareMatrix, SquareMatrix>> pairs);

    // x_i -> [1] for every generator; used to probe the constant term.
    static MatrixAssignment all_ones(const FieldPtr& field, int alphabet);

    int alphabet() const { return static_cast<int>(pairs_.size()); }
    std::size_t dim() const { return pairs_.front().first.dim(); }
    const FieldPtr& field() const { return pairs_.front().first.field(); }
    const SquareMatrix& matrix(int generator) const;   // 1-based
    const SquareMatrix& inverse(int generator) const;  // 1-based

  private:
    std::vector<std::pair<SquareMatrix, SquareMatrix>> pairs_;
};

}  // namespace fgpit
