#ifndef HSD_SERIES_HPP
#define HSD_SERIES_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <hsd/coeffring.hpp>
#include <hsd/multi_index.hpp>

namespace hsd
{

// Truncation order of a series: finite N means "known modulo (X)^N", i.e.
// only monomials of total degree < N are meaningful. Exact means no truncation.
class Precision
{
public:
    static constexpr std::uint64_t exact_tag = std::numeric_limits<std::uint64_t>::max();

    constexpr Precision() = default;
    static constexpr Precision exact()
    {
        return Precision{};
    }
    static constexpr Precision finite(std::uint64_t n)
    {
        Precision p;
        p.n_ = n;
        return p;
    }

    constexpr bool is_exact() const
    {
        return n_ == exact_tag;
    }
    // Only meaningful when finite.
    constexpr std::uint64_t order() const
    {
        return n_;
    }
    // True iff a monomial of this total degree survives truncation.
    constexpr bool admits(std::uint64_t degree) const
    {
        return is_exact() || degree < n_;
    }
    // Precision after applying an operator of order i; saturates at 0.
    constexpr Precision lowered(std::uint64_t i) const
    {
        if (is_exact()) {
            return *this;
        }
        return finite(n_ > i ? n_ - i : 0);
    }

    friend constexpr Precision min(Precision a, Precision b)
    {
        return a.n_ <= b.n_ ? a : b;
    }
    friend constexpr bool operator==(Precision, Precision) = default;
    friend constexpr auto operator<=>(Precision a, Precision b)
    {
        return a.n_ <=> b.n_;
    }

    std::string to_string() const
    {
        return is_exact() ? "exact" : std::to_string(n_);
    }

private:
    std::uint64_t n_ = exact_tag;
};

// Sparse multivariate truncated power series over a FieldSpec.
// Terms are kept sorted in graded-lex order with nonzero coefficients and,
// for finite precision N, total degree < N. Equality is structural.
class Series
{
public:
    using term_type = std::pair<MultiIndex, Scalar>;

    Series() = default;
    Series(const FieldSpec &field, std::size_t nvars, Precision prec = Precision::exact());
    // Arbitrary terms; normalized (sorted, combined, zero-free, truncated).
    Series(const FieldSpec &field, std::size_t nvars, Precision prec, std::vector<term_type> terms);

    static Series constant(const FieldSpec &field, std::size_t nvars, const Scalar &c,
                           Precision prec = Precision::exact());
    static Series one(const FieldSpec &field, std::size_t nvars, Precision prec = Precision::exact());
    // X_j, j 0-based.
    static Series variable(const FieldSpec &field, std::size_t nvars, std::size_t j,
                           Precision prec = Precision::exact());
    static Series monomial(const FieldSpec &field, const MultiIndex &beta, const Scalar &c,
                           Precision prec = Precision::exact());

    const FieldSpec &field() const
    {
        return field_;
    }
    std::size_t nvars() const
    {
        return nvars_;
    }
    Precision precision() const
    {
        return prec_;
    }
    const std::vector<term_type> &terms() const
    {
        return terms_;
    }
    std::size_t size() const
    {
        return terms_.size();
    }
    bool is_zero() const
    {
        return terms_.empty();
    }
    bool is_exact() const
    {
        return prec_.is_exact();
    }

    Scalar coefficient(const MultiIndex &beta) const;
    Scalar constant_term() const;
    // True iff the series is a constant (possibly zero).
    bool is_constant() const;
    // Highest total degree of a stored term; 0 for the zero series.
    std::uint64_t degree() const;

    Series truncated(Precision prec) const;
    // Same terms, precision relabelled to min(current, prec).
    Series with_precision(Precision prec) const
    {
        return truncated(prec);
    }

    Series operator-() const;
    Series &operator+=(const Series &o);
    Series &operator-=(const Series &o);
    Series &operator*=(const Series &o);
    Series &operator*=(const Scalar &c);

    friend Series operator+(Series a, const Series &b)
    {
        return a += b;
    }
    friend Series operator-(Series a, const Series &b)
    {
        return a -= b;
    }
    friend Series operator*(const Series &a, const Series &b);
    friend Series operator*(Series a, const Scalar &c)
    {
        return a *= c;
    }
    friend Series operator*(const Scalar &c, Series a)
    {
        return a *= c;
    }

    friend bool operator==(const Series &, const Series &) = default;

    // Compare modulo (X)^min(prec(a), prec(b)).
    friend bool agrees(const Series &a, const Series &b);

    std::string to_string() const;

    void check_compatible(const Series &o) const;

private:
    void normalize();

    FieldSpec field_;
    std::size_t nvars_ = 0;
    Precision prec_;
    std::vector<term_type> terms_;
};

Series series_mul(const Series &a, const Series &b);
Series series_pow(const Series &a, std::uint64_t e);

// a * result == 1 mod (X)^target_precision. Throws NotAUnit if a(0) == 0.
Series series_inverse(const Series &a, std::uint64_t target_precision);

// Element of A[t]/(t^{m+1}): coefficients of t^0..t^m.
// Entry i carries its own precision tag; the entries of a substitution result
// are trusted to decreasing orders (see substitute).
class TSeries
{
public:
    TSeries() = default;
    explicit TSeries(std::vector<Series> coeffs);
    // Zero element with tlen m.
    TSeries(const FieldSpec &field, std::size_t nvars, std::size_t tlen, Precision prec = Precision::exact());

    static TSeries constant(const Series &s, std::size_t tlen);

    std::size_t tlen() const
    {
        return coeffs_.size() - 1;
    }
    std::size_t nvars() const
    {
        return coeffs_.front().nvars();
    }
    const FieldSpec &field() const
    {
        return coeffs_.front().field();
    }
    const Series &operator[](std::size_t i) const
    {
        return coeffs_[i];
    }
    Series &operator[](std::size_t i)
    {
        return coeffs_[i];
    }
    const std::vector<Series> &coeffs() const
    {
        return coeffs_;
    }
    // Minimum of the entry precisions.
    Precision precision() const;

    TSeries &operator+=(const TSeries &o);
    TSeries &operator*=(const Series &c);
    friend TSeries operator*(const TSeries &a, const TSeries &b);
    // Multiply by t^s, dropping t-degrees above tlen.
    TSeries shifted(std::size_t s) const;

    friend bool operator==(const TSeries &, const TSeries &) = default;

private:
    void check_compatible(const TSeries &o) const;

    std::vector<Series> coeffs_;
};

// Evaluates f at X_j := images[j] in A[t]/(t^{m+1}).
// Precision contract: the images are expected to satisfy image[j] = X_j mod t
// with HS-derivation semantics, so that the coefficient of t^i only depends on
// f modulo (X)^{N-i}; entry i of the result is tagged with prec(f) - i.
TSeries substitute(const Series &f, const std::vector<TSeries> &images);

// Memoizing evaluator of the homomorphism X_j -> images[j].
// Caches the images of monomials; not thread-safe, create one per thread.
class Substitution
{
public:
    explicit Substitution(std::vector<TSeries> images);

    const std::vector<TSeries> &images() const
    {
        return images_;
    }
    std::size_t nvars() const
    {
        return images_.size();
    }
    std::size_t tlen() const
    {
        return images_.front().tlen();
    }

    // Image of X^beta (exact when the images are exact).
    const TSeries &monomial_image(const MultiIndex &beta);

    TSeries operator()(const Series &f);
    // Only the t^i coefficient, tagged with prec(f) - i.
    Series coefficient(const Series &f, std::size_t i);

private:
    std::vector<TSeries> images_;
    std::unordered_map<MultiIndex, TSeries, MultiIndexHash> cache_;
};

// Random polynomial with up to max_terms terms of total degree <= max_degree and
// coefficients drawn from [-coeff_bound, coeff_bound] (reduced into the field).
Series random_polynomial(const FieldSpec &field, std::size_t nvars, std::uint32_t max_degree,
                         std::size_t max_terms, std::mt19937_64 &rng, long coeff_bound = 3);

} // namespace hsd

#endif
