#include "fgpit/matrix.hpp"

#include <stdexcept>

#include "fgpit/errors.hpp"

namespace fgpit {

SquareMatrix::SquareMatrix(FieldPtr field, std::size_t dim)
    : field_(std::move(field)), dim_(dim), entries_(dim * dim, field_->zero()) {
    if (dim == 0) throw std::invalid_argument("matrix dimension must be positive");
}

SquareMatrix SquareMatrix::identity(const FieldPtr& field, std::size_t dim) {
    SquareMatrix m(field, dim);
    for (std::size_t i = 0; i < dim; ++i) m.set(i, i, field->one());
    return m;
}

void SquareMatrix::check_compatible(const SquareMatrix& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("matrix dimension mismatch");
    if (field_.get() != o.field_.get() && !field_->same(*o.field_))
        throw std::invalid_argument("matrix field mismatch");
}

SquareMatrix SquareMatrix::operator*(const SquareMatrix& o) const {
    check_compatible(o);
    SquareMatrix r(field_, dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t k = 0; k < dim_; ++k) {
            const Scalar& a = at(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                const Scalar& b = o.at(k, j);
                if (b.is_zero()) continue;
                r.set(i, j, r.at(i, j) + a * b);
            }
        }
    return r;
}

SquareMatrix SquareMatrix::operator+(const SquareMatrix& o) const {
    check_compatible(o);
    SquareMatrix r(field_, dim_);
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] + o.entries_[i];
    return r;
}

SquareMatrix SquareMatrix::operator-(const SquareMatrix& o) const {
    check_compatible(o);
    SquareMatrix r(field_, dim_);
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] - o.entries_[i];
    return r;
}

SquareMatrix SquareMatrix::scaled(const Scalar& c) const {
    SquareMatrix r(field_, dim_);
    for (std::size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] * c;
    return r;
}

bool SquareMatrix::operator==(const SquareMatrix& o) const {
    if (dim_ != o.dim_) return false;
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i] != o.entries_[i]) return false;
    return true;
}

SquareMatrix SquareMatrix::inverse() const {
    SquareMatrix a = *this;
    SquareMatrix inv = identity(field_, dim_);
    for (std::size_t col = 0; col < dim_; ++col) {
        std::size_t pivot = col;
        while (pivot < dim_ && a.at(pivot, col).is_zero()) ++pivot;
        if (pivot == dim_) throw SingularMatrix();
        if (pivot != col) {
            for (std::size_t j = 0; j < dim_; ++j) {
                std::swap(a.entries_[pivot * dim_ + j], a.entries_[col * dim_ + j]);
                std::swap(inv.entries_[pivot * dim_ + j], inv.entries_[col * dim_ + j]);
            }
        }
        const Scalar piv_inv = a.at(col, col).inverse();
        for (std::size_t j = 0; j < dim_; ++j) {
            a.set(col, j, a.at(col, j) * piv_inv);
            inv.set(col, j, inv.at(col, j) * piv_inv);
        }
        for (std::size_t row = 0; row < dim_; ++row) {
            if (row == col) continue;
            const Scalar factor = a.at(row, col);
            if (factor.is_zero()) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                a.set(row, j, a.at(row, j) - factor * a.at(col, j));
                inv.set(row, j, inv.at(row, j) - factor * inv.at(col, j));
            }
        }
    }
    return inv;
}

bool SquareMatrix::is_zero() const {
    for (const auto& e : entries_)
        if (!e.is_zero()) return false;
    return true;
}

bool SquareMatrix::is_identity() const {
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) {
            if (i == j && !at(i, j).is_one()) return false;
            if (i != j && !at(i, j).is_zero()) return false;
        }
    return true;
}

MatrixAssignment::MatrixAssignment(std::vector<std::pair<SquareMatrix, SquareMatrix>> pairs)
    : pairs_(std::move(pairs)) {
    if (pairs_.empty()) throw std::invalid_argument("assignment needs at least one generator");
    const auto& first = pairs_.front().first;
    for (const auto& [m, minv] : pairs_) {
        if (m.dim() != first.dim() || minv.dim() != first.dim())
            throw std::invalid_argument("assignment matrices must share one dimension");
        if (!m.field()->same(*first.field()) || !minv.field()->same(*first.field()))
            throw std::invalid_argument("assignment matrices must share one field");
        if (!(m * minv).is_identity())
            throw std::invalid_argument("assignment pair is not a verified inverse pair");
    }
}

MatrixAssignment MatrixAssignment::all_ones(const FieldPtr& field, int alphabet) {
    std::vector<std::pair<SquareMatrix, SquareMatrix>> pairs;
    SquareMatrix one = SquareMatrix::identity(field, 1);
    for (int i = 0; i < alphabet; ++i) pairs.emplace_back(one, one);
    return MatrixAssignment(std::move(pairs));
}

const SquareMatrix& MatrixAssignment::matrix(int generator) const {
    if (generator < 1 || generator > alphabet())
        throw std::invalid_argument("generator index out of range");
    return pairs_[generator - 1].first;
}

const SquareMatrix& MatrixAssignment::inverse(int generator) const {
    if (generator < 1 || generator > alphabet())
        throw std::invalid_argument("generator index out of range");
    return pairs_[generator - 1].second;
}

}  // namespace fgpit
