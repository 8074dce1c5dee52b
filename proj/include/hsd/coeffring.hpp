#ifndef HSD_COEFFRING_HPP
#define HSD_COEFFRING_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include <hsd/multi_index.hpp>

namespace hsd
{

// The coefficient field: either F_p (p prime, p < 2^63) or Q.
class FieldSpec
{
public:
    // Defaults to Q.
    FieldSpec() = default;

    static FieldSpec rationals()
    {
        return FieldSpec{};
    }
    // Throws InvalidInput when p is not prime.
    static FieldSpec prime(std::uint64_t p);

    // "QQ" or "GF(p)".
    static FieldSpec parse(std::string_view text);
    std::string to_string() const;

    bool is_rationals() const
    {
        return p_ == 0;
    }
    bool is_prime_field() const
    {
        return p_ != 0;
    }
    // 0 for Q.
    std::uint64_t characteristic() const
    {
        return p_;
    }

    friend bool operator==(const FieldSpec &, const FieldSpec &) = default;

private:
    explicit FieldSpec(std::uint64_t p) : p_(p) {}

    std::uint64_t p_ = 0;
};

bool is_prime(std::uint64_t n);

// An exact element of a FieldSpec. Canonical representation: residue in
// [0, p) for F_p, reduced fraction for Q, so equality is structural.
class Scalar
{
public:
    // Zero of Q.
    Scalar() = default;

    Scalar(const FieldSpec &field, long value);
    Scalar(const FieldSpec &field, const mpz_class &value);
    // Q only: num/den, canonicalized. For F_p, num * den^{-1}.
    Scalar(const FieldSpec &field, const mpz_class &num, const mpz_class &den);

    static Scalar zero(const FieldSpec &field)
    {
        return Scalar(field, 0L);
    }
    static Scalar one(const FieldSpec &field)
    {
        return Scalar(field, 1L);
    }

    // Decimal integer (any sign, reduced) for F_p; "a" or "a/b" for Q.
    static Scalar parse(const FieldSpec &field, std::string_view text);
    std::string to_string() const;

    const FieldSpec &field() const
    {
        return field_;
    }
    bool is_zero() const;
    bool is_one() const;

    // F_p only.
    std::uint64_t residue() const;
    // Q only.
    const mpq_class &rational() const;

    Scalar operator-() const;
    Scalar &operator+=(const Scalar &o);
    Scalar &operator-=(const Scalar &o);
    Scalar &operator*=(const Scalar &o);
    Scalar &operator/=(const Scalar &o);

    friend Scalar operator+(Scalar a, const Scalar &b)
    {
        return a += b;
    }
    friend Scalar operator-(Scalar a, const Scalar &b)
    {
        return a -= b;
    }
    friend Scalar operator*(Scalar a, const Scalar &b)
    {
        return a *= b;
    }
    friend Scalar operator/(Scalar a, const Scalar &b)
    {
        return a /= b;
    }

    friend bool operator==(const Scalar &a, const Scalar &b);

private:
    void check_same(const Scalar &o) const;

    FieldSpec field_;
    std::variant<std::uint64_t, mpq_class> v_ = mpq_class(0);
};

// Multiplicative inverse; throws DivisionByZero on 0.
Scalar scalar_inv(const Scalar &a);

Scalar scalar_pow(Scalar a, std::uint64_t e);

// binom(beta, alpha) = prod_i binom(beta_i, alpha_i) reduced into the field;
// 0 when some alpha_i > beta_i. Over F_p uses Lucas' theorem per coordinate.
Scalar binom_multi(const MultiIndex &beta, const MultiIndex &alpha, const FieldSpec &field);

// binom(n, k) mod p by Lucas' theorem.
std::uint64_t binom_mod_p(std::uint64_t n, std::uint64_t k, std::uint64_t p);

} // namespace hsd

#endif
