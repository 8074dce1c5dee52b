#ifndef HSD_FORMULA_HPP
#define HSD_FORMULA_HPP

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include <hsd/hsderiv.hpp>
#include <hsd/multi_index.hpp>
#include <hsd/series.hpp>

namespace hsd
{

// beta >= alpha componentwise and alpha_i == 0 forces beta_i == 0.
// Throws LengthMismatch on different lengths.
bool succeq(const MultiIndex &beta, const MultiIndex &alpha);

using IndexPair = std::pair<MultiIndex, MultiIndex>; // (lambda, mu)

// All (lambda, mu) in N^n x N^n with |lambda| = i, |mu| = m and lambda >= mu
// in the succeq order. Ordered by lambda, then mu, both lexicographically
// descending. Empty when m > i or m == 0.
std::vector<IndexPair> enumerate_pairs(std::size_t i, std::size_t m, std::size_t n);

// Table of coefficients C_{l d}: level l = 1..m (a weight), family slot
// d = 0..n-1. Unset entries are zero.
class CoeffTable
{
public:
    CoeffTable() = default;
    CoeffTable(const FieldSpec &field, std::size_t nvars, std::size_t levels, std::size_t slots);

    std::size_t levels() const
    {
        return c_.size();
    }
    std::size_t slots() const
    {
        return slots_;
    }
    std::size_t nvars() const
    {
        return nvars_;
    }
    const FieldSpec &field() const
    {
        return field_;
    }

    const Series &at(std::size_t level, std::size_t d) const;
    Series &at(std::size_t level, std::size_t d);

    friend bool operator==(const CoeffTable &, const CoeffTable &) = default;

private:
    FieldSpec field_;
    std::size_t nvars_ = 0, slots_ = 0;
    std::vector<std::vector<Series>> c_;
};

// prod_d sum over ordered compositions l_1 + ... + l_{mu_d} = lambda_d (l_q >= 1)
// of prod_q C[l_q, d]; the empty product (mu_d = lambda_d = 0) is 1.
// Levels beyond the table count as zero. Throws OrderViolation unless lambda >= mu.
Series composition_coeff(const CoeffTable &c, const MultiIndex &lambda, const MultiIndex &mu);

// Evaluates the right-hand side of the master formula
//   sum_{m=1}^{i} sum_{|lambda|=i, |mu|=m, lambda >= mu} coeff(lambda, mu) D_mu
// for a fixed table and family. Coefficients are memoized per (lambda, mu) and
// grouped per mu so each D_mu(f) is evaluated once. Not thread-safe.
class FormulaEvaluator
{
public:
    FormulaEvaluator(CoeffTable c, const std::vector<HSDerivation> &ds);

    const CoeffTable &table() const
    {
        return c_;
    }
    FamilyEvaluator &family()
    {
        return family_;
    }

    // Terms with min_m <= |mu| <= i.
    Series evaluate(std::size_t i, const Series &f, std::size_t min_m = 1);

    // sum over lambda of coeff(lambda, mu) for |lambda| = i.
    Series grouped_coefficient(std::size_t i, const MultiIndex &mu);

private:
    const std::vector<std::pair<MultiIndex, Series>> &groups(std::size_t i);
    // sums_[d][a][b]: sum over compositions of a into b parts of prod C[l_q, d]
    const Series &coordinate_sum(std::size_t d, std::size_t a, std::size_t b);

    CoeffTable c_;
    FamilyEvaluator family_;
    std::map<std::size_t, std::vector<std::pair<MultiIndex, Series>>> grouped_; // i -> [(mu, coeff)]
    std::vector<std::map<std::pair<std::size_t, std::size_t>, Series>> sums_;
};

// The right-hand side of the master formula at weight i, applied to f.
Series formula_grande(const CoeffTable &c, const std::vector<HSDerivation> &ds, std::size_t i, const Series &f);

} // namespace hsd

#endif
