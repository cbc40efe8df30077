#include "fgpit/interpolate.hpp"

#include <algorithm>
#include <stdexcept>

#include "fgpit/errors.hpp"
#include "fgpit/matrix.hpp"

namespace fgpit {

namespace {

constexpr std::int64_t kMaxCandidates = 2'000'000;
constexpr std::size_t kMaxTestSetPoints = 1'000'000;

// min(s, C(N+d, d)) saturated to int64
std::int64_t effective_sparsity(std::size_t num_vars, int degree, std::int64_t sparsity) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(num_vars + degree),
                 static_cast<unsigned long>(degree));
    if (binom < sparsity) return static_cast<std::int64_t>(binom.get_si());
    return sparsity;
}

// Distinct monomials must keep distinct values: over the rationals always;
// over a prime field when the largest candidate value q_N^d stays below p.
bool prime_power_points_feasible(int degree, const FieldPtr& field,
                                 const std::vector<std::uint64_t>& primes) {
    if (field->is_rational()) return true;
    if (field->extension_degree() != 1) return false;
    mpz_class max_value;
    mpz_ui_pow_ui(max_value.get_mpz_t(), primes.back(), static_cast<unsigned long>(degree));
    return max_value < field->order();
}

struct CandidateMonomial {
    Monomial monomial;
    mpz_class value;  // integer value at the prime-power base point
    Scalar in_field;  // the same value in the field
};

// All exponent vectors of total degree <= degree, or one-variable-per-group
// selections when groups are given.
std::vector<CandidateMonomial> enumerate_candidates(
    const std::vector<CommVar>& vars, int degree, const FieldPtr& field,
    const std::vector<std::uint64_t>& primes,
    const std::vector<std::vector<std::size_t>>* position_groups) {
    std::vector<CandidateMonomial> out;
    auto value_to_field = [&](const mpz_class& v) {
        if (field->is_rational()) return field->from_rational(mpq_class(v));
        return field->element(v % field->order());
    };

    if (position_groups != nullptr) {
        mpz_class budget = 1;
        for (const auto& g : *position_groups) budget *= static_cast<long>(g.size());
        if (budget > kMaxCandidates) throw Error("candidate monomial space too large");
        std::vector<std::size_t> choice;
        Monomial mono;
        mpz_class value = 1;
        auto rec = [&](auto&& self, std::size_t group) -> void {
            if (group == position_groups->size()) {
                out.push_back({mono, value, value_to_field(value)});
                return;
            }
            for (std::size_t vi : (*position_groups)[group]) {
                mono[vars[vi]] += 1;
                value *= static_cast<unsigned long>(primes[vi]);
                self(self, group + 1);
                value /= static_cast<unsigned long>(primes[vi]);
                if (--mono[vars[vi]] == 0) mono.erase(vars[vi]);
            }
        };
        rec(rec, 0);
        return out;
    }

    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(vars.size() + degree),
                 static_cast<unsigned long>(degree));
    if (binom > kMaxCandidates) throw Error("candidate monomial space too large");
    Monomial mono;
    mpz_class value = 1;
    auto rec = [&](auto&& self, std::size_t var, int remaining) -> void {
        if (var == vars.size()) {
            out.push_back({mono, value, value_to_field(value)});
            return;
        }
        self(self, var + 1, remaining);
        mpz_class saved = value;
        for (int e = 1; e <= remaining; ++e) {
            mono[vars[var]] = e;
            value *= static_cast<unsigned long>(primes[var]);
            self(self, var + 1, remaining - e);
        }
        value = saved;
        mono.erase(vars[var]);
        return;
    };
    rec(rec, 0, degree);
    return out;
}

Scalar eval_poly(std::span<const Scalar> coeffs_ascending, const Scalar& x, const FieldPtr& field) {
    Scalar acc = field->zero();
    for (auto it = coeffs_ascending.rbegin(); it != coeffs_ascending.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

// Exponent recovery by trial division of the integer monomial value.
Monomial exponents_by_trial_division(mpz_class value, const std::vector<CommVar>& vars,
                                     const std::vector<std::uint64_t>& primes) {
    Monomial m;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        int e = 0;
        while (mpz_divisible_ui_p(value.get_mpz_t(), static_cast<unsigned long>(primes[i]))) {
            value /= static_cast<unsigned long>(primes[i]);
            ++e;
        }
        if (e) m.emplace(vars[i], e);
    }
    if (value != 1) throw SparsityExceeded("recurrence root is not a candidate monomial value");
    return m;
}

}  // namespace

std::vector<std::uint64_t> first_primes(std::size_t count) {
    std::vector<std::uint64_t> primes;
    primes.reserve(count);
    std::uint64_t candidate = 2;
    while (primes.size() < count) {
        bool prime = true;
        for (std::uint64_t p : primes) {
            if (p * p > candidate) break;
            if (candidate % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime) primes.push_back(candidate);
        ++candidate;
    }
    return primes;
}

std::vector<Scalar> berlekamp_massey(std::span<const Scalar> seq, const FieldPtr& field) {
    std::vector<Scalar> c{field->one()};  // connection polynomial, ascending
    std::vector<Scalar> b{field->one()};
    std::size_t len = 0;  // current LFSR length
    std::size_t m = 1;
    Scalar bb = field->one();

    for (std::size_t t = 0; t < seq.size(); ++t) {
        Scalar delta = seq[t];
        for (std::size_t i = 1; i < c.size() && i <= t; ++i) delta = delta + c[i] * seq[t - i];
        if (delta.is_zero()) {
            ++m;
            continue;
        }
        Scalar factor = delta * bb.inverse();
        if (2 * len <= t) {
            std::vector<Scalar> old_c = c;
            if (c.size() < b.size() + m) c.resize(b.size() + m, field->zero());
            for (std::size_t i = 0; i < b.size(); ++i) c[i + m] = c[i + m] - factor * b[i];
            len = t + 1 - len;
            b = std::move(old_c);
            bb = delta;
            m = 1;
        } else {
            if (c.size() < b.size() + m) c.resize(b.size() + m, field->zero());
            for (std::size_t i = 0; i < b.size(); ++i) c[i + m] = c[i + m] - factor * b[i];
            ++m;
        }
    }
    // characteristic polynomial x^len * C(1/x), ascending coefficients
    c.resize(len + 1, field->zero());
    std::vector<Scalar> char_poly(len + 1, field->zero());
    for (std::size_t i = 0; i <= len; ++i) char_poly[i] = c[len - i];
    return char_poly;
}

TestSet deterministic_test_set(std::size_t num_vars, int degree, std::int64_t sparsity,
                               const FieldPtr& field) {
    if (num_vars == 0 || degree < 0 || sparsity < 1)
        throw std::invalid_argument("bad test set parameters");
    const auto primes = first_primes(num_vars);
    TestSet ts{num_vars, degree, sparsity, {}};

    if (prime_power_points_feasible(degree, field, primes)) {
        const std::int64_t s_eff = effective_sparsity(num_vars, degree, sparsity);
        std::vector<Scalar> point(num_vars, field->one());
        for (std::int64_t t = 0; t < s_eff; ++t) {
            ts.points.push_back(point);
            if (t + 1 < s_eff)
                for (std::size_t i = 0; i < num_vars; ++i)
                    point[i] = point[i] * field->from_int(static_cast<std::int64_t>(primes[i]));
        }
        return ts;
    }

    // Small-field construction: for enough multipliers k, map variable i to
    // y^(k^i mod q); for each k sweep enough nonzero y values to hit the
    // image's univariate degree.
    const mpz_class pair_count_z = mpz_class(sparsity) * (sparsity - 1) / 2;
    if (pair_count_z * static_cast<long>(num_vars) + 1 > 1'000'000)
        throw FieldTooSmall("test set construction too large for these parameters");
    const std::uint64_t pair_count = pair_count_z.get_ui();
    std::uint64_t q = std::max<std::uint64_t>(static_cast<std::uint64_t>(degree),
                                              pair_count * num_vars + 1) + 1;
    while (!is_prime_u64(q)) ++q;
    const std::uint64_t num_k = pair_count * num_vars + 1;
    const mpz_class nonzero_count = field->order() - 1;

    for (std::uint64_t k = 1; k <= num_k; ++k) {
        std::vector<std::uint64_t> a(num_vars);
        std::uint64_t kp = 1;
        std::uint64_t max_a = 0;
        for (std::size_t i = 0; i < num_vars; ++i) {
            kp = static_cast<std::uint64_t>((static_cast<unsigned __int128>(kp) * k) % q);
            a[i] = kp;
            max_a = std::max(max_a, kp);
        }
        const std::uint64_t univariate_degree = static_cast<std::uint64_t>(degree) * max_a;
        if (nonzero_count < univariate_degree + 1)
            throw FieldTooSmall("field " + field->str() + " cannot host the test set (needs " +
                                std::to_string(univariate_degree + 1) + " nonzero points)");
        if (ts.points.size() + univariate_degree + 1 > kMaxTestSetPoints)
            throw FieldTooSmall("test set too large for these parameters");
        for (std::uint64_t yi = 1; yi <= univariate_degree + 1; ++yi) {
            Scalar y = field->element(yi);
            std::vector<Scalar> point;
            point.reserve(num_vars);
            for (std::size_t i = 0; i < num_vars; ++i) point.push_back(y.pow(a[i]));
            ts.points.push_back(std::move(point));
        }
    }
    return ts;
}

CommPoly sparse_interpolate(const CommBlackBox& bb, const std::vector<CommVar>& vars, int degree,
                            std::int64_t sparsity, const FieldPtr& field,
                            const std::vector<std::vector<std::size_t>>* position_groups) {
    if (vars.empty() || degree < 0 || sparsity < 1)
        throw std::invalid_argument("bad interpolation parameters");
    const auto primes = first_primes(vars.size());
    if (!prime_power_points_feasible(degree, field, primes))
        throw FieldTooSmall("field " + field->str() +
                            " is too small for prime-power interpolation points (largest candidate "
                            "monomial value must stay below the field order)");

    const std::int64_t s_eff = effective_sparsity(vars.size(), degree, sparsity);
    const std::int64_t T = 2 * s_eff;

    // black-box values at (q_1^t, ..., q_N^t), t = 0..T+1 (two extra for the
    // verification pass)
    std::vector<Scalar> values;
    values.reserve(T + 2);
    std::vector<Scalar> point(vars.size(), field->one());
    for (std::int64_t t = 0; t < T + 2; ++t) {
        values.push_back(bb(point));
        for (std::size_t i = 0; i < vars.size(); ++i)
            point[i] = point[i] * field->from_int(static_cast<std::int64_t>(primes[i]));
    }

    const std::vector<Scalar> lambda =
        berlekamp_massey(std::span<const Scalar>(values.data(), static_cast<std::size_t>(T)), field);
    const std::size_t r = lambda.size() - 1;

    CommPoly result(field);
    std::vector<Scalar> roots;
    std::vector<Monomial> monomials;
    if (r > 0) {
        auto candidates = enumerate_candidates(vars, degree, field, primes, position_groups);
        for (const auto& cand : candidates) {
            if (eval_poly(lambda, cand.in_field, field).is_zero()) {
                roots.push_back(cand.in_field);
                Monomial recovered = exponents_by_trial_division(cand.value, vars, primes);
                if (recovered != cand.monomial)
                    throw Error("internal: trial division disagrees with candidate enumeration");
                monomials.push_back(std::move(recovered));
            }
        }
        if (roots.size() != r)
            throw SparsityExceeded("recurrence has roots outside the candidate monomial space "
                                   "(degree or sparsity bound too small)");

        // coefficients from the transposed Vandermonde system sum_j c_j b_j^t = v_t
        SquareMatrix vm(field, r);
        std::vector<Scalar> row(r, field->one());
        for (std::size_t t = 0; t < r; ++t) {
            for (std::size_t j = 0; j < r; ++j) {
                vm.set(t, j, row[j]);
                row[j] = row[j] * roots[j];
            }
        }
        SquareMatrix vm_inv = vm.inverse();
        std::vector<Scalar> coeffs(r, field->zero());
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t t = 0; t < r; ++t)
                coeffs[i] = coeffs[i] + vm_inv.at(i, t) * values[t];

        for (std::size_t j = 0; j < r; ++j) {
            if (coeffs[j].is_zero())
                throw SparsityExceeded("recovered coefficient vanishes; bounds violated");
            result.add_term(monomials[j], coeffs[j]);
        }

        // verification on all queried points, including the two fresh ones
        std::vector<Scalar> powers(r, field->one());
        for (std::int64_t t = 0; t < T + 2; ++t) {
            Scalar expect = field->zero();
            for (std::size_t j = 0; j < r; ++j) {
                expect = expect + coeffs[j] * powers[j];
                powers[j] = powers[j] * roots[j];
            }
            if (!(expect == values[t]))
                throw SparsityExceeded("interpolation verification failed "
                                       "(sparsity or degree bound violated)");
        }
    } else {
        for (std::int64_t t = 0; t < T + 2; ++t)
            if (!values[t].is_zero())
                throw SparsityExceeded("interpolation verification failed "
                                       "(sparsity or degree bound violated)");
    }
    return result;
}

}  // namespace fgpit
