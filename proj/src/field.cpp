#include "fgpit/field.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "fgpit/errors.hpp"

namespace fgpit {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 add_mod(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    if (s >= p) s -= p;
    return s;
}

u64 sub_mod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + (p - b); }

u64 mul_mod_u64(u64 a, u64 b, u64 p) { return static_cast<u64>((u128)a * b % p); }

u64 pow_mod_u64(u64 a, u64 e, u64 p) {
    u64 r = 1 % p;
    while (e) {
        if (e & 1) r = mul_mod_u64(r, a, p);
        a = mul_mod_u64(a, a, p);
        e >>= 1;
    }
    return r;
}

u64 inv_mod_u64(u64 a, u64 p) {
    std::int64_t t = 0, newt = 1;
    std::int64_t r = static_cast<std::int64_t>(p), newr = static_cast<std::int64_t>(a % p);
    while (newr != 0) {
        std::int64_t q = r / newr;
        std::int64_t tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p);
    return static_cast<u64>(t);
}

// ---- dense polynomials over GF(p), coefficients ascending, no trailing zeros ----

using Poly = std::vector<u64>;

void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = add_mod(r[i + j], mul_mod_u64(a[i], b[j], p), p);
    }
    return r;
}

// a = q*b + rem; returns rem, stores q. b nonzero.
Poly poly_divmod(Poly rem, const Poly& b, u64 p, Poly& q) {
    poly_trim(rem);
    q.clear();
    if (rem.size() < b.size()) return rem;
    const std::size_t db = b.size() - 1;
    q.assign(rem.size() - db, 0);
    const u64 lead_inv = inv_mod_u64(b.back(), p);
    for (std::size_t i = rem.size(); i-- > db;) {
        u64 c = mul_mod_u64(rem[i], lead_inv, p);
        if (c == 0) continue;
        q[i - db] = c;
        for (std::size_t j = 0; j <= db; ++j)
            rem[i - db + j] = sub_mod(rem[i - db + j], mul_mod_u64(c, b[j], p), p);
    }
    poly_trim(rem);
    return rem;
}

Poly poly_mod(Poly a, const Poly& m, u64 p) {
    Poly q;
    return poly_divmod(std::move(a), m, p, q);
}

Poly poly_pow_mod(Poly base, mpz_class e, const Poly& m, u64 p) {
    Poly r = {1};
    base = poly_mod(std::move(base), m, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = poly_mod(poly_mul(r, base, p), m, p);
        base = poly_mod(poly_mul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        a = poly_mod(std::move(a), b, p);
        std::swap(a, b);
    }
    return a;
}

std::vector<std::size_t> prime_divisors(std::size_t k) {
    std::vector<std::size_t> out;
    for (std::size_t q = 2; q * q <= k; ++q) {
        if (k % q == 0) {
            out.push_back(q);
            while (k % q == 0) k /= q;
        }
    }
    if (k > 1) out.push_back(k);
    return out;
}

// Rabin's criterion: monic f of degree k is irreducible over GF(p) iff
// x^(p^k) == x (mod f) and gcd(x^(p^(k/q)) - x, f) = 1 for each prime q | k.
bool poly_irreducible(const Poly& f, u64 p) {
    const std::size_t k = f.size() - 1;
    if (k == 0) return false;
    if (k == 1) return true;
    const Poly x = {0, 1};
    auto frob_minus_x = [&](std::size_t e) {
        mpz_class pe;
        mpz_ui_pow_ui(pe.get_mpz_t(), p, static_cast<unsigned long>(e));
        Poly g = poly_pow_mod(x, pe, f, p);
        if (g.size() < 2) g.resize(2, 0);
        g[1] = sub_mod(g[1], 1, p);
        poly_trim(g);
        return g;
    };
    if (!frob_minus_x(k).empty()) return false;
    for (std::size_t q : prime_divisors(k)) {
        Poly g = frob_minus_x(k / q);
        if (poly_gcd(f, g, p).size() != 1) return false;
    }
    return true;
}

// First irreducible monic degree-k polynomial in index order, where index m
// encodes the lower coefficients as base-p digits (c0 least significant).
Poly find_irreducible(u64 p, unsigned k) {
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
    for (mpz_class idx = 0; idx < pk; ++idx) {
        Poly f(k + 1, 0);
        mpz_class rest = idx;
        for (unsigned i = 0; i < k; ++i) {
            mpz_class digit = rest % p;
            f[i] = digit.get_ui();
            rest /= p;
        }
        f[k] = 1;
        if (poly_irreducible(f, p)) return f;
    }
    throw Error("no irreducible modulus found");  // unreachable: they exist for every p, k
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = pow_mod_u64(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod_u64(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

// ---- Field factories ----

FieldPtr Field::rationals() {
    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = 0;
    f->k_ = 1;
    return f;
}

FieldPtr Field::prime_field(u64 p) {
    if (!is_prime_u64(p))
        throw std::invalid_argument("characteristic must be prime, got " + std::to_string(p));
    if (p >= (1ULL << 62)) throw std::invalid_argument("prime too large (must fit in 62 bits)");
    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->k_ = 1;
    return f;
}

FieldPtr Field::extension_field(u64 p, unsigned degree) {
    if (degree == 0) throw std::invalid_argument("extension degree must be positive");
    if (p == 0) {
        if (degree != 1)
            throw std::invalid_argument("characteristic 0 requires extension degree 1");
        return rationals();
    }
    if (degree == 1) return prime_field(p);
    if (!is_prime_u64(p))
        throw std::invalid_argument("characteristic must be prime, got " + std::to_string(p));
    if (p >= (1ULL << 62)) throw std::invalid_argument("prime too large (must fit in 62 bits)");
    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->k_ = degree;
    f->modulus_ = find_irreducible(p, degree);
    return f;
}

FieldPtr Field::parse(const std::string& spec) {
    if (spec == "Q" || spec == "q") return rationals();
    auto parse_u64 = [&](const std::string& s) -> u64 {
        if (s.empty() || s.size() > 20 || s.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad field spec: " + spec);
        return std::strtoull(s.c_str(), nullptr, 10);
    };
    auto caret = spec.find('^');
    if (caret == std::string::npos) {
        u64 p = parse_u64(spec);
        return p == 0 ? rationals() : prime_field(p);
    }
    u64 p = parse_u64(spec.substr(0, caret));
    u64 k = parse_u64(spec.substr(caret + 1));
    if (k == 0 || k > 64) throw std::invalid_argument("bad extension degree in field spec: " + spec);
    return extension_field(p, static_cast<unsigned>(k));
}

mpz_class Field::order() const {
    if (p_ == 0) throw std::logic_error("the rationals are infinite");
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p_, k_);
    return r;
}

std::string Field::str() const {
    if (p_ == 0) return "Q";
    if (k_ == 1) return std::to_string(p_);
    return std::to_string(p_) + "^" + std::to_string(k_);
}

bool Field::same(const Field& o) const { return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_; }

// ---- element construction ----

Scalar Field::zero() const {
    if (p_ == 0) return make(mpq_class(0));
    if (k_ == 1) return make(u64{0});
    return make(std::vector<u64>(k_, 0));
}

Scalar Field::one() const {
    if (p_ == 0) return make(mpq_class(1));
    if (k_ == 1) return make(u64{1});
    std::vector<u64> v(k_, 0);
    v[0] = 1;
    return make(v);
}

Scalar Field::from_int(std::int64_t v) const {
    if (p_ == 0) return make(mpq_class(static_cast<long>(v)));
    u64 r;
    if (v >= 0) {
        r = static_cast<u64>(v) % p_;
    } else {
        r = (p_ - static_cast<u64>(-(v + 1)) % p_ - 1) % p_;
    }
    if (k_ == 1) return make(r);
    std::vector<u64> vec(k_, 0);
    vec[0] = r;
    return make(vec);
}

Scalar Field::from_rational(const mpq_class& q) const {
    if (p_ == 0) {
        mpq_class c = q;
        c.canonicalize();
        return make(c);
    }
    const mpz_class pz(static_cast<unsigned long>(p_));
    mpz_class dmod = q.get_den() % pz;
    if (dmod == 0)
        throw std::invalid_argument("rational has no image in characteristic " + std::to_string(p_));
    mpz_class nmod = q.get_num() % pz;
    if (nmod < 0) nmod += pz;
    u64 r = mul_mod_u64(nmod.get_ui(), inv_mod_u64(dmod.get_ui(), p_), p_);
    if (k_ == 1) return make(r);
    std::vector<u64> vec(k_, 0);
    vec[0] = r;
    return make(vec);
}

Scalar Field::element(const mpz_class& index) const {
    if (p_ == 0) throw std::logic_error("element enumeration needs a finite field");
    if (index < 0 || index >= order()) throw std::invalid_argument("element index out of range");
    if (k_ == 1) return make(static_cast<u64>(index.get_ui()));
    std::vector<u64> v(k_, 0);
    mpz_class rest = index;
    for (unsigned i = 0; i < k_; ++i) {
        mpz_class digit = rest % p_;
        v[i] = digit.get_ui();
        rest /= p_;
    }
    return make(v);
}

Scalar Field::embed(const Scalar& s) const {
    const Field& src = *s.field();
    if (same(src)) return make(s.v_);
    if (src.p_ == 0) return from_rational(std::get<mpq_class>(s.v_));
    if (src.p_ == p_ && src.k_ == 1) {
        u64 r = std::get<u64>(s.v_);
        if (k_ == 1) return make(r);
        std::vector<u64> vec(k_, 0);
        vec[0] = r;
        return make(vec);
    }
    throw std::invalid_argument("no embedding from " + src.str() + " into " + str());
}

Scalar Field::sample_nonzero(Rng& rng) const {
    if (p_ == 0) {
        u64 v = 1 + rng.below(kDefaultPrime);  // integers in [1, 2^61 - 1]
        mpz_class z;
        mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
        return make(mpq_class(z));
    }
    mpz_class idx = 1 + rng.below(mpz_class(order() - 1));
    return element(idx);
}

mpz_class Field::sample_set_size() const {
    if (p_ == 0) {
        mpz_class z;
        u64 v = kDefaultPrime;
        mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
        return z;
    }
    return order() - 1;
}

void Field::check_same(const Scalar& a, const Scalar& b) const {
    const Field* fa = a.field().get();
    const Field* fb = b.field().get();
    if (fa == fb) return;
    if (fa == nullptr || fb == nullptr || !fa->same(*fb))
        throw std::invalid_argument("scalars from different fields");
}

// ---- representation arithmetic ----

u64 Field::mul_mod(u64 a, u64 b) const { return mul_mod_u64(a, b, p_); }

std::vector<u64> Field::ext_mul(const std::vector<u64>& a, const std::vector<u64>& b) const {
    std::vector<u64> r(2 * k_ - 1, 0);
    for (unsigned i = 0; i < k_; ++i) {
        if (a[i] == 0) continue;
        for (unsigned j = 0; j < k_; ++j)
            r[i + j] = add_mod(r[i + j], mul_mod_u64(a[i], b[j], p_), p_);
    }
    for (unsigned i = 2 * k_ - 2; i >= k_; --i) {
        u64 c = r[i];
        if (c != 0)
            for (unsigned j = 0; j < k_; ++j)
                r[i - k_ + j] = sub_mod(r[i - k_ + j], mul_mod_u64(c, modulus_[j], p_), p_);
        r[i] = 0;
    }
    r.resize(k_);
    return r;
}

std::vector<u64> Field::ext_inverse(const std::vector<u64>& a) const {
    // extended Euclid in GF(p)[x]; invariant s_i * a == r_i (mod modulus)
    Poly r0(modulus_.begin(), modulus_.end());
    Poly r1(a.begin(), a.end());
    poly_trim(r1);
    if (r1.empty()) throw Error("division by zero");
    Poly s0 = {}, s1 = {1};
    while (!r1.empty()) {
        Poly q;
        Poly r2 = poly_divmod(r0, r1, p_, q);
        Poly qs = poly_mul(q, s1, p_);
        Poly s2 = s0;
        s2.resize(std::max(s2.size(), qs.size()), 0);
        for (std::size_t i = 0; i < qs.size(); ++i) s2[i] = sub_mod(s2[i], qs[i], p_);
        poly_trim(s2);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.size() != 1) throw Error("modulus not irreducible");
    const u64 ginv = inv_mod_u64(r0[0], p_);
    std::vector<u64> out(k_, 0);
    for (std::size_t i = 0; i < s0.size() && i < k_; ++i) out[i] = mul_mod_u64(s0[i], ginv, p_);
    return out;
}

// ---- Scalar operations ----

bool Scalar::is_zero() const {
    if (field_->p_ == 0) return std::get<mpq_class>(v_) == 0;
    if (field_->k_ == 1) return std::get<u64>(v_) == 0;
    const auto& v = std::get<std::vector<u64>>(v_);
    return std::all_of(v.begin(), v.end(), [](u64 c) { return c == 0; });
}

bool Scalar::is_one() const { return *this == field_->one(); }

Scalar Scalar::operator+(const Scalar& o) const {
    field_->check_same(*this, o);
    const Field& f = *field_;
    if (f.p_ == 0) return Scalar(field_, std::get<mpq_class>(v_) + std::get<mpq_class>(o.v_));
    if (f.k_ == 1) return Scalar(field_, add_mod(std::get<u64>(v_), std::get<u64>(o.v_), f.p_));
    const auto& a = std::get<std::vector<u64>>(v_);
    const auto& b = std::get<std::vector<u64>>(o.v_);
    std::vector<u64> r(f.k_);
    for (unsigned i = 0; i < f.k_; ++i) r[i] = add_mod(a[i], b[i], f.p_);
    return Scalar(field_, std::move(r));
}

Scalar Scalar::operator-(const Scalar& o) const {
    field_->check_same(*this, o);
    const Field& f = *field_;
    if (f.p_ == 0) return Scalar(field_, std::get<mpq_class>(v_) - std::get<mpq_class>(o.v_));
    if (f.k_ == 1) return Scalar(field_, sub_mod(std::get<u64>(v_), std::get<u64>(o.v_), f.p_));
    const auto& a = std::get<std::vector<u64>>(v_);
    const auto& b = std::get<std::vector<u64>>(o.v_);
    std::vector<u64> r(f.k_);
    for (unsigned i = 0; i < f.k_; ++i) r[i] = sub_mod(a[i], b[i], f.p_);
    return Scalar(field_, std::move(r));
}

Scalar Scalar::operator*(const Scalar& o) const {
    field_->check_same(*this, o);
    const Field& f = *field_;
    if (f.p_ == 0) return Scalar(field_, std::get<mpq_class>(v_) * std::get<mpq_class>(o.v_));
    if (f.k_ == 1) return Scalar(field_, f.mul_mod(std::get<u64>(v_), std::get<u64>(o.v_)));
    return Scalar(field_, f.ext_mul(std::get<std::vector<u64>>(v_), std::get<std::vector<u64>>(o.v_)));
}

Scalar Scalar::operator-() const {
    const Field& f = *field_;
    if (f.p_ == 0) return Scalar(field_, mpq_class(-std::get<mpq_class>(v_)));
    if (f.k_ == 1) {
        u64 v = std::get<u64>(v_);
        return Scalar(field_, v == 0 ? v : f.p_ - v);
    }
    const auto& a = std::get<std::vector<u64>>(v_);
    std::vector<u64> r(f.k_);
    for (unsigned i = 0; i < f.k_; ++i) r[i] = a[i] == 0 ? 0 : f.p_ - a[i];
    return Scalar(field_, std::move(r));
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw Error("division by zero");
    const Field& f = *field_;
    if (f.p_ == 0) return Scalar(field_, mpq_class(1) / std::get<mpq_class>(v_));
    if (f.k_ == 1) return Scalar(field_, inv_mod_u64(std::get<u64>(v_), f.p_));
    return Scalar(field_, f.ext_inverse(std::get<std::vector<u64>>(v_)));
}

Scalar Scalar::pow(u64 e) const {
    Scalar r = field_->one();
    Scalar base = *this;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

bool Scalar::operator==(const Scalar& o) const {
    field_->check_same(*this, o);
    return v_ == o.v_;
}

std::string Scalar::str() const {
    const Field& f = *field_;
    if (f.p_ == 0) return std::get<mpq_class>(v_).get_str();
    if (f.k_ == 1) return std::to_string(std::get<u64>(v_));
    const auto& v = std::get<std::vector<u64>>(v_);
    std::string s = "[";
    for (unsigned i = 0; i < f.k_; ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + "]";
}

const mpq_class& Scalar::rational() const {
    if (field_->p_ != 0) throw std::logic_error("not a rational scalar");
    return std::get<mpq_class>(v_);
}

// ---- separating elements ----

namespace {

// true iff alpha != 0 and alpha^i +- alpha^j != 0 for all 1 <= i < j <= n,
// i.e. G(alpha) != 0 for G(y) = prod_{i<j} (y^i + y^j)(y^i - y^j).
bool separates(const Scalar& alpha, int n) {
    if (alpha.is_zero()) return false;
    std::vector<Scalar> powers;
    powers.reserve(n);
    Scalar p = alpha;
    for (int i = 1; i <= n; ++i) {
        powers.push_back(p);
        p = p * alpha;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if ((powers[i] + powers[j]).is_zero()) return false;
            if ((powers[i] - powers[j]).is_zero()) return false;
        }
    return true;
}

}  // namespace

SeparatingElements find_separating_elements(int n, const FieldPtr& field, const mpz_class& min_field_size) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    const u64 p = field->characteristic();

    if (p == 0) {
        std::vector<Scalar> alphas;
        for (int i = 1; i <= n; ++i) alphas.push_back(field->from_int(i));
        return {field, std::move(alphas)};
    }

    if (p > 2 * static_cast<u64>(n)) {
        // 1..n separate already: |b_i*i + b_j*j| <= 2n - 1 < p and is nonzero
        // over the integers for i != j. Extend only if a larger sampling
        // space was requested.
        FieldPtr working = field;
        if (working->order() < min_field_size) {
            if (field->extension_degree() != 1)
                throw FieldTooSmall("field " + field->str() +
                                    " is too small and extending an extension field is unsupported");
            unsigned k = 1;
            while (Field::extension_field(p, k)->order() < min_field_size) ++k;
            working = Field::extension_field(p, k);
        }
        std::vector<Scalar> alphas;
        for (int i = 1; i <= n; ++i) alphas.push_back(working->from_int(i));
        return {working, std::move(alphas)};
    }

    // Small characteristic: scan extensions in deterministic order for a
    // non-root of G. Succeeds at the latest once the field has more than
    // 2n^3 elements, since deg G <= 2n^3.
    mpz_class guarantee = 2 * mpz_class(n) * n * n + 1;
    if (guarantee < min_field_size) guarantee = min_field_size;
    const unsigned m = field->extension_degree();
    for (unsigned k = m;; k += m) {
        if (k != m && m != 1)
            throw FieldTooSmall("field " + field->str() +
                                " is too small and extending an extension field is unsupported");
        FieldPtr ext = (k == m) ? field : Field::extension_field(p, k);
        mpz_class ord = ext->order();
        if (ord >= min_field_size) {
            for (mpz_class idx = 1; idx < ord; ++idx) {
                Scalar alpha = ext->element(idx);
                if (separates(alpha, n)) {
                    std::vector<Scalar> alphas;
                    Scalar a = alpha;
                    for (int i = 1; i <= n; ++i) {
                        alphas.push_back(a);
                        a = a * alpha;
                    }
                    return {ext, std::move(alphas)};
                }
            }
            if (ord >= guarantee) throw Error("no separating element found below the guaranteed bound");
        }
    }
}

}  // namespace fgpit
