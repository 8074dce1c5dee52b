#include <hsd/coeffring.hpp>

#include <algorithm>
#include <charconv>
#include <string>

#include <hsd/error.hpp>

namespace hsd
{

namespace
{

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p)
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1u) {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

// Inverse of a nonzero residue modulo a prime.
std::uint64_t invmod(std::uint64_t a, std::uint64_t p)
{
    return powmod(a, p - 2, p);
}

std::uint64_t reduce(const mpz_class &v, std::uint64_t p)
{
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
    return r.get_ui();
}

std::uint64_t reduce_signed(long v, std::uint64_t p)
{
    if (v >= 0) {
        return static_cast<std::uint64_t>(v) % p;
    }
    const auto m = (static_cast<std::uint64_t>(-(v + 1)) + 1) % p;
    return m == 0 ? 0 : p - m;
}

} // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) {
            return n == q;
        }
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1u) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic witness set for 64-bit inputs.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        auto x = powmod(a, d, n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) {
            return false;
        }
    }
    return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p)
{
    if (p >= (1ull << 63) || !is_prime(p)) {
        throw InvalidInput("field characteristic " + std::to_string(p) + " is not a supported prime");
    }
    return FieldSpec(p);
}

FieldSpec FieldSpec::parse(std::string_view text)
{
    if (text == "QQ" || text == "Q") {
        return rationals();
    }
    if (text.size() > 4 && text.substr(0, 3) == "GF(" && text.back() == ')') {
        const auto digits = text.substr(3, text.size() - 4);
        std::uint64_t p = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
        if (ec == std::errc{} && ptr == digits.data() + digits.size()) {
            return prime(p);
        }
    }
    throw InvalidInput("bad field syntax '" + std::string(text) + "' (expected QQ or GF(p))");
}

std::string FieldSpec::to_string() const
{
    return is_rationals() ? "QQ" : "GF(" + std::to_string(p_) + ")";
}

Scalar::Scalar(const FieldSpec &field, long value) : field_(field)
{
    if (field.is_prime_field()) {
        v_ = reduce_signed(value, field.characteristic());
    } else {
        v_ = mpq_class(value);
    }
}

Scalar::Scalar(const FieldSpec &field, const mpz_class &value) : field_(field)
{
    if (field.is_prime_field()) {
        v_ = reduce(value, field.characteristic());
    } else {
        v_ = mpq_class(value);
    }
}

Scalar::Scalar(const FieldSpec &field, const mpz_class &num, const mpz_class &den) : field_(field)
{
    if (den == 0) {
        throw DivisionByZero();
    }
    if (field.is_prime_field()) {
        const auto p = field.characteristic();
        const auto d = reduce(den, p);
        if (d == 0) {
            throw DivisionByZero();
        }
        v_ = mulmod(reduce(num, p), invmod(d, p), p);
    } else {
        mpq_class q(num, den);
        q.canonicalize();
        v_ = std::move(q);
    }
}

Scalar Scalar::parse(const FieldSpec &field, std::string_view text)
{
    const auto slash = text.find('/');
    mpz_class num, den = 1;
    auto parse_int = [&](std::string_view s, mpz_class &out) {
        if (s.empty() || out.set_str(std::string(s), 10) != 0) {
            throw InvalidInput("bad scalar syntax '" + std::string(text) + "'");
        }
    };
    if (slash == std::string_view::npos) {
        parse_int(text, num);
    } else {
        parse_int(text.substr(0, slash), num);
        parse_int(text.substr(slash + 1), den);
        if (den <= 0) {
            throw InvalidInput("scalar denominator must be positive in '" + std::string(text) + "'");
        }
    }
    return Scalar(field, num, den);
}

std::string Scalar::to_string() const
{
    if (field_.is_prime_field()) {
        return std::to_string(std::get<std::uint64_t>(v_));
    }
    return std::get<mpq_class>(v_).get_str();
}

bool Scalar::is_zero() const
{
    if (field_.is_prime_field()) {
        return std::get<std::uint64_t>(v_) == 0;
    }
    return sgn(std::get<mpq_class>(v_)) == 0;
}

bool Scalar::is_one() const
{
    if (field_.is_prime_field()) {
        return std::get<std::uint64_t>(v_) == 1;
    }
    return std::get<mpq_class>(v_) == 1;
}

std::uint64_t Scalar::residue() const
{
    return std::get<std::uint64_t>(v_);
}

const mpq_class &Scalar::rational() const
{
    return std::get<mpq_class>(v_);
}

void Scalar::check_same(const Scalar &o) const
{
    if (!(field_ == o.field_)) {
        throw IncompatibleAmbient("scalar arithmetic across fields " + field_.to_string() + " and "
                                  + o.field_.to_string());
    }
}

Scalar Scalar::operator-() const
{
    Scalar r(*this);
    if (field_.is_prime_field()) {
        auto &x = std::get<std::uint64_t>(r.v_);
        x = x == 0 ? 0 : field_.characteristic() - x;
    } else {
        auto &q = std::get<mpq_class>(r.v_);
        q = -q;
    }
    return r;
}

Scalar &Scalar::operator+=(const Scalar &o)
{
    check_same(o);
    if (field_.is_prime_field()) {
        const auto p = field_.characteristic();
        auto &x = std::get<std::uint64_t>(v_);
        x += std::get<std::uint64_t>(o.v_);
        if (x >= p) {
            x -= p;
        }
    } else {
        std::get<mpq_class>(v_) += std::get<mpq_class>(o.v_);
    }
    return *this;
}

Scalar &Scalar::operator-=(const Scalar &o)
{
    check_same(o);
    if (field_.is_prime_field()) {
        const auto p = field_.characteristic();
        auto &x = std::get<std::uint64_t>(v_);
        const auto y = std::get<std::uint64_t>(o.v_);
        x = x >= y ? x - y : x + (p - y);
    } else {
        std::get<mpq_class>(v_) -= std::get<mpq_class>(o.v_);
    }
    return *this;
}

Scalar &Scalar::operator*=(const Scalar &o)
{
    check_same(o);
    if (field_.is_prime_field()) {
        auto &x = std::get<std::uint64_t>(v_);
        x = mulmod(x, std::get<std::uint64_t>(o.v_), field_.characteristic());
    } else {
        std::get<mpq_class>(v_) *= std::get<mpq_class>(o.v_);
    }
    return *this;
}

Scalar &Scalar::operator/=(const Scalar &o)
{
    return *this *= scalar_inv(o);
}

bool operator==(const Scalar &a, const Scalar &b)
{
    return a.field_ == b.field_ && a.v_ == b.v_;
}

Scalar scalar_inv(const Scalar &a)
{
    if (a.is_zero()) {
        throw DivisionByZero();
    }
    const auto &f = a.field();
    if (f.is_prime_field()) {
        return Scalar(f, mpz_class(invmod(a.residue(), f.characteristic())));
    }
    const auto &q = a.rational();
    return Scalar(f, q.get_den(), q.get_num());
}

Scalar scalar_pow(Scalar a, std::uint64_t e)
{
    Scalar r = Scalar::one(a.field());
    while (e) {
        if (e & 1u) {
            r *= a;
        }
        a *= a;
        e >>= 1;
    }
    return r;
}

std::uint64_t binom_mod_p(std::uint64_t n, std::uint64_t k, std::uint64_t p)
{
    std::uint64_t r = 1;
    while (k > 0) {
        const auto ni = n % p, ki = k % p;
        if (ki > ni) {
            return 0;
        }
        // binom(ni, ki) with ni < p: no factor of p in the denominator.
        const auto kk = std::min(ki, ni - ki);
        std::uint64_t num = 1, den = 1;
        for (std::uint64_t j = 0; j < kk; ++j) {
            num = mulmod(num, ni - j, p);
            den = mulmod(den, j + 1, p);
        }
        r = mulmod(r, mulmod(num, invmod(den, p), p), p);
        n /= p;
        k /= p;
    }
    return r;
}

Scalar binom_multi(const MultiIndex &beta, const MultiIndex &alpha, const FieldSpec &field)
{
    if (beta.size() != alpha.size()) {
        throw LengthMismatch("binom_multi: multi-index length mismatch");
    }
    if (field.is_prime_field()) {
        const auto p = field.characteristic();
        std::uint64_t r = 1;
        for (std::size_t i = 0; i < beta.size() && r != 0; ++i) {
            if (alpha[i] > beta[i]) {
                return Scalar::zero(field);
            }
            r = mulmod(r, binom_mod_p(beta[i], alpha[i], p), p);
        }
        return Scalar(field, mpz_class(r));
    }
    mpz_class r = 1, b;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        if (alpha[i] > beta[i]) {
            return Scalar::zero(field);
        }
        mpz_bin_uiui(b.get_mpz_t(), beta[i], alpha[i]);
        r *= b;
    }
    return Scalar(field, r);
}

} // namespace hsd
