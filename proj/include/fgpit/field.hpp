#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "fgpit/rng.hpp"

namespace fgpit {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// An immutable exact field element. Carries a reference to its field;
/// arithmetic between elements of different fields throws.
class Scalar {
  public:
    Scalar() = default;

    const FieldPtr& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inverse() const;  // throws on zero
    Scalar pow(std::uint64_t e) const;

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // Canonical text form: "num/den" (rationals), decimal residue (prime
    // fields), "[c0,c1,...]" ascending coefficients (extension fields).
    std::string str() const;

    // Rational value; valid only in characteristic 0.
    const mpq_class& rational() const;

  private:
    friend class Field;
    using Rep = std::variant<mpq_class, std::uint64_t, std::vector<std::uint64_t>>;
    Scalar(FieldPtr f, Rep v) : field_(std::move(f)), v_(std::move(v)) {}

    FieldPtr field_;
    Rep v_;
};

/// A field specification: the rationals (characteristic 0), a prime field
/// GF(p), or an extension GF(p^k) presented as GF(p)[g]/(modulus). Immutable;
/// construct through the factory functions, which canonicalize the modulus
/// by a deterministic lexicographic search.
class Field : public std::enable_shared_from_this<Field> {
  public:
    static FieldPtr rationals();
    static FieldPtr prime_field(std::uint64_t p);
    static FieldPtr extension_field(std::uint64_t p, unsigned degree);
    // "Q" | "p" | "p^k", e.g. "3^2".
    static FieldPtr parse(const std::string& spec);

    std::uint64_t characteristic() const { return p_; }  // 0 = rationals
    unsigned extension_degree() const { return k_; }
    bool is_rational() const { return p_ == 0; }
    // Monic irreducible modulus, coefficients c0..ck ascending (k > 1 only).
    const std::vector<std::uint64_t>& modulus() const { return modulus_; }
    mpz_class order() const;  // p^k; throws for the rationals
    std::string str() const;
    bool same(const Field& o) const;

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(std::int64_t v) const;
    Scalar from_rational(const mpq_class& q) const;
    // Canonical enumeration of a finite field: index 0..order-1, base-p digits
    // of the index become ascending coefficients.
    Scalar element(const mpz_class& index) const;
    // Lift a scalar from this field itself, from the rationals (when the
    // denominator is a unit), or from the prime subfield.
    Scalar embed(const Scalar& s) const;
    // Uniform nonzero element. In characteristic 0 the documented sampling
    // set is the integers [1, 2^61 - 1].
    Scalar sample_nonzero(Rng& rng) const;
    // Size of the sampling set used by sample_nonzero (|F| - 1, or 2^61 - 1).
    mpz_class sample_set_size() const;

  private:
    Field() = default;

    Scalar make(Scalar::Rep v) const { return Scalar(shared_from_this(), std::move(v)); }
    void check_same(const Scalar& a, const Scalar& b) const;

    // Representation helpers per field kind.
    std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) const;
    std::vector<std::uint64_t> ext_mul(const std::vector<std::uint64_t>& a,
                                       const std::vector<std::uint64_t>& b) const;
    std::vector<std::uint64_t> ext_inverse(const std::vector<std::uint64_t>& a) const;

    friend class Scalar;

    std::uint64_t p_ = 0;
    unsigned k_ = 1;
    std::vector<std::uint64_t> modulus_;  // size k_+1, monic; empty when k_ == 1
};

// Deterministic 64-bit primality test (Miller-Rabin with fixed bases).
bool is_prime_u64(std::uint64_t n);

// The default large prime field modulus: 2^61 - 1.
inline constexpr std::uint64_t kDefaultPrime = 2305843009213693951ULL;

struct SeparatingElements {
    FieldPtr field;  // the input field or a deterministically built extension
    std::vector<Scalar> alphas;
};

/// Elements a_1..a_n with b_i*a_i + b_j*a_j != 0 for all i < j and signs
/// b in {-1,+1}. In characteristic 0 or > 2n these are 1..n in the input
/// field (extended only if `min_field_size` demands). Otherwise an extension
/// is scanned in deterministic order for a non-root of
/// G(y) = prod_{i<j} (y^i + y^j)(y^i - y^j) and a_i = alpha^i is returned.
SeparatingElements find_separating_elements(int n, const FieldPtr& field,
                                            const mpz_class& min_field_size = 0);

}  // namespace fgpit
