#ifndef HSD_HSDERIV_HPP
#define HSD_HSDERIV_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <hsd/multi_index.hpp>
#include <hsd/series.hpp>

namespace hsd
{

// Hasse-Schmidt derivation (D_0 = id, D_1, ..., D_m) of k[X_1..X_n], stored
// through the ring homomorphism E: k[X] -> k[X][t]/(t^{m+1}),
// E(X_j) = X_j + sum_i D_i(X_j) t^i. The higher Leibniz rule holds by
// construction since every component is read off a substitution.
class HSDerivation
{
public:
    // images[j] = E(X_j). Throws InvalidInput unless every t^0 coefficient is
    // exactly X_j, every entry is an exact polynomial and m >= 1.
    explicit HSDerivation(std::vector<TSeries> images);

    static HSDerivation identity(const FieldSpec &field, std::size_t nvars, std::size_t length);
    // components[i-1][j] = D_i(X_j) for i = 1..m.
    static HSDerivation from_components(const FieldSpec &field, std::size_t nvars,
                                        const std::vector<std::vector<Series>> &components);

    std::size_t nvars() const
    {
        return images_.size();
    }
    std::size_t length() const
    {
        return images_.front().tlen();
    }
    const FieldSpec &field() const
    {
        return images_.front().field();
    }
    const std::vector<TSeries> &images() const
    {
        return images_;
    }
    // D_i(X_j), j 0-based.
    const Series &image_component(std::size_t i, std::size_t j) const
    {
        return images_[j][i];
    }

    friend bool operator==(const HSDerivation &, const HSDerivation &) = default;

private:
    std::vector<TSeries> images_;
};

// An ordinary k-derivation of k[X], given by its values on the variables.
class Derivation
{
public:
    explicit Derivation(std::vector<Series> values);

    std::size_t nvars() const
    {
        return values_.size();
    }
    const FieldSpec &field() const
    {
        return values_.front().field();
    }
    const std::vector<Series> &values() const
    {
        return values_;
    }
    // sum_j values[j] * d f / d X_j
    Series operator()(const Series &f) const;

private:
    std::vector<Series> values_;
};

// Partial derivative d/dX_j, j 0-based.
Series partial_derivative(const Series &f, std::size_t j);

// Evaluates components of one HSDerivation with a monomial-image cache.
// Not thread-safe.
class ComponentEvaluator
{
public:
    explicit ComponentEvaluator(const HSDerivation &d);

    std::size_t length() const
    {
        return length_;
    }
    // D_i(f); precision lowered by i.
    Series operator()(std::size_t i, const Series &f);
    // D_i(X^beta), exact.
    const Series &on_monomial(std::size_t i, const MultiIndex &beta);

private:
    std::size_t length_;
    Substitution sub_;
};

// Coefficient of t^i in E(f). Throws ComponentOutOfRange if i > length.
Series apply_component(const HSDerivation &d, std::size_t i, const Series &f);

// Taylor family Delta^j: E(X_j) = X_j + t, E(X_l) = X_l otherwise. j 0-based.
HSDerivation taylor_hsd(std::size_t j, std::size_t length, std::size_t nvars, const FieldSpec &field);

// The n Taylor HS derivations Delta^1..Delta^n.
std::vector<HSDerivation> taylor_basis(std::size_t nvars, std::size_t length, const FieldSpec &field);

// All Delta^(alpha)(f) for alpha <= alpha_max, read off the expansion of f(X+T).
std::map<MultiIndex, Series, GradedLexLess> taylor_delta_table(const Series &f, const MultiIndex &alpha_max);

// E(X_j) = X_j + delta(X_j) t. The values of delta must be exact polynomials.
HSDerivation integrate(const Derivation &delta, std::size_t length);

// (D o D')_i = sum_{r+s=i} D_r o D'_s: E_{D o D'} is E_D applied to the
// coefficients of E_{D'}. Degree-1 part is D_1 + D'_1.
HSDerivation group_compose(const HSDerivation &d, const HSDerivation &dp);

// Triangular solve of sum_{r+s=i} D_r o D'_s = 0 (i >= 1) on the variables.
HSDerivation group_inverse(const HSDerivation &d);

// Evaluates composites D_mu = D^1_{mu_1} o ... o D^n_{mu_n} for a family
// (D^n_{mu_n} applied first), memoized on monomials. Not thread-safe.
class FamilyEvaluator
{
public:
    explicit FamilyEvaluator(const std::vector<HSDerivation> &ds);

    std::size_t size() const
    {
        return evals_.size();
    }
    std::size_t nvars() const
    {
        return nvars_;
    }
    const FieldSpec &field() const
    {
        return field_;
    }
    // D_mu(f); precision lowered by |mu|.
    Series compose(const MultiIndex &mu, const Series &f);
    const Series &compose_on_monomial(const MultiIndex &mu, const MultiIndex &beta);
    ComponentEvaluator &member(std::size_t d)
    {
        return evals_[d];
    }

private:
    FieldSpec field_;
    std::size_t nvars_;
    std::vector<ComponentEvaluator> evals_;
    std::unordered_map<MultiIndex, Series, MultiIndexHash> memo_; // key: mu concatenated with beta
};

Series compose_multi(const std::vector<HSDerivation> &ds, const MultiIndex &mu, const Series &f);

// Operator family i -> D_i used by the Leibniz checker. Lets callers check
// arbitrary (possibly corrupted) component tables.
using ComponentFamily = std::function<Series(std::size_t, const Series &)>;

struct LeibnizOptions {
    std::size_t trials = 20;
    std::uint64_t seed = 0;
    // Every pair of monomials with total degree <= basis_degree is also checked.
    std::uint32_t basis_degree = 2;
    // Shape of the random factors.
    std::uint32_t random_degree = 3;
    std::size_t random_terms = 4;
};

struct LeibnizWitness {
    std::size_t component = 0;
    Series f, g, lhs, rhs;
};

struct LeibnizReport {
    bool passed = true;
    std::uint64_t seed = 0;
    std::size_t pairs_checked = 0;
    std::optional<LeibnizWitness> witness;
};

// Checks D_i(fg) = sum_{r+s=i} D_r(f) D_s(g) for i = 0..length on random pairs
// and on the monomial basis. A violation is reported, not thrown.
LeibnizReport leibniz_check(const ComponentFamily &family, std::size_t length, const FieldSpec &field,
                            std::size_t nvars, const LeibnizOptions &opts);
LeibnizReport leibniz_check(const HSDerivation &d, const LeibnizOptions &opts);

// Checks delta(fg) = delta(f) g + f delta(g) on random pairs.
LeibnizReport derivation_check(const std::function<Series(const Series &)> &delta, const FieldSpec &field,
                               std::size_t nvars, const LeibnizOptions &opts);

// Random HS derivation: each D_i(X_j) a random polynomial.
HSDerivation random_hsd(const FieldSpec &field, std::size_t nvars, std::size_t length, std::mt19937_64 &rng,
                        std::uint32_t max_degree = 2, std::size_t max_terms = 3);

} // namespace hsd

#endif
