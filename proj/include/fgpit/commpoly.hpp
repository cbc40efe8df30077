#pragma once

#include <compare>
#include <functional>
#include <map>
#include <string>

#include "fgpit/algebra.hpp"
#include "fgpit/field.hpp"

namespace fgpit {

/// One commuting variable of the encoding target ring: y_{i,j} or z_{i,j}
/// (generator i at word position j), or a block variable xi_j.
struct CommVar {
    enum class Axis : std::uint8_t { Y, Z, Xi };
    Axis axis;
    int index;     // generator i for Y/Z, block index for Xi
    int position;  // word position j for Y/Z; 0 for Xi

    bool operator==(const CommVar&) const = default;
    friend std::strong_ordering operator<=>(const CommVar& a, const CommVar& b) {
        if (a.axis != b.axis) return a.axis <=> b.axis;
        if (a.position != b.position) return a.position <=> b.position;
        return a.index <=> b.index;
    }

    std::string str() const;

    static CommVar y(int i, int j) { return {Axis::Y, i, j}; }
    static CommVar z(int i, int j) { return {Axis::Z, i, j}; }
    static CommVar xi(int j) { return {Axis::Xi, j, 0}; }
};

/// Exponent map with no zero exponents; the empty monomial is 1.
using Monomial = std::map<CommVar, int>;

/// Sparse commutative polynomial with nonzero coefficients only.
class CommPoly {
  public:
    explicit CommPoly(FieldPtr field) : field_(std::move(field)) {}
    static CommPoly constant(const Scalar& c);

    const FieldPtr& field() const { return field_; }
    const std::map<Monomial, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t sparsity() const { return terms_.size(); }
    int total_degree() const;  // -1 for zero

    CommPoly& add_term(const Monomial& m, const Scalar& coeff);
    CommPoly operator+(const CommPoly& o) const;
    CommPoly operator-(const CommPoly& o) const;
    bool operator==(const CommPoly& o) const;

    Scalar evaluate(const std::function<Scalar(const CommVar&)>& valuation) const;

    std::string str() const;

  private:
    FieldPtr field_;
    std::map<Monomial, Scalar> terms_;
};

/// Position-indexed encoding of algebra elements as commutative polynomials:
/// the word x_{i1}^{b1} ... x_{il}^{bl} maps to the product over positions j
/// of y_{ij,j} (when b_j = +1) or z_{ij,j} (when b_j = -1), extended linearly.
/// Injective on reduced words and sparsity-preserving.
CommPoly word_encoding(const AlgebraElement& f);

/// Inverse of the word encoding on single monomials. Throws NotInImage when
/// the monomial is not the image of a reduced word (repeated or missing
/// positions, exponents above 1, or block variables).
ReducedWord word_encoding_inverse(const Monomial& m);

}  // namespace fgpit
