#include <hsd/formula.hpp>

#include <algorithm>

#include <hsd/error.hpp>

namespace hsd
{

bool succeq(const MultiIndex &beta, const MultiIndex &alpha)
{
    if (beta.size() != alpha.size()) {
        throw LengthMismatch("succeq: lengths " + std::to_string(beta.size()) + " and "
                             + std::to_string(alpha.size()) + " differ");
    }
    for (std::size_t i = 0; i < beta.size(); ++i) {
        if (beta[i] < alpha[i] || (alpha[i] == 0 && beta[i] != 0)) {
            return false;
        }
    }
    return true;
}

std::vector<IndexPair> enumerate_pairs(std::size_t i, std::size_t m, std::size_t n)
{
    std::vector<IndexPair> out;
    if (m == 0 || m > i) {
        return out;
    }
    const auto mus = multi_indices_of_degree(n, static_cast<std::uint32_t>(m));
    for (const auto &lambda : multi_indices_of_degree(n, static_cast<std::uint32_t>(i))) {
        for (const auto &mu : mus) {
            if (succeq(lambda, mu)) {
                out.emplace_back(lambda, mu);
            }
        }
    }
    return out;
}

CoeffTable::CoeffTable(const FieldSpec &field, std::size_t nvars, std::size_t levels, std::size_t slots)
    : field_(field), nvars_(nvars), slots_(slots), c_(levels, std::vector<Series>(slots, Series(field, nvars)))
{
}

const Series &CoeffTable::at(std::size_t level, std::size_t d) const
{
    if (level < 1 || level > c_.size() || d >= slots_) {
        throw ComponentOutOfRange("coefficient table index (" + std::to_string(level) + ", " + std::to_string(d + 1)
                                  + ") out of range");
    }
    return c_[level - 1][d];
}

Series &CoeffTable::at(std::size_t level, std::size_t d)
{
    return const_cast<Series &>(static_cast<const CoeffTable &>(*this).at(level, d));
}

namespace
{

// A zero known only to finite order still lowers the precision of whatever it touches.
bool exact_zero(const Series &s)
{
    return s.is_zero() && s.is_exact();
}

// Ordered-composition sum for one coordinate, by recursion on the first part.
Series coordinate_sum_uncached(const CoeffTable &c, std::size_t d, std::size_t a, std::size_t b)
{
    const auto &field = c.field();
    const auto n = c.nvars();
    if (b == 0) {
        return a == 0 ? Series::one(field, n) : Series(field, n);
    }
    Series acc(field, n);
    if (a < b) {
        return acc;
    }
    for (std::size_t l = 1; l + (b - 1) <= a && l <= c.levels(); ++l) {
        const auto &cl = c.at(l, d);
        if (exact_zero(cl)) {
            continue;
        }
        acc += cl * coordinate_sum_uncached(c, d, a - l, b - 1);
    }
    return acc;
}

} // namespace

Series composition_coeff(const CoeffTable &c, const MultiIndex &lambda, const MultiIndex &mu)
{
    if (lambda.size() != c.slots() || mu.size() != c.slots()) {
        throw LengthMismatch("composition_coeff: weights must have one entry per family slot");
    }
    if (!succeq(lambda, mu)) {
        throw OrderViolation(lambda.to_string() + " does not dominate " + mu.to_string());
    }
    auto r = Series::one(c.field(), c.nvars());
    for (std::size_t d = 0; d < c.slots() && !exact_zero(r); ++d) {
        r *= coordinate_sum_uncached(c, d, lambda[d], mu[d]);
    }
    return r;
}

FormulaEvaluator::FormulaEvaluator(CoeffTable c, const std::vector<HSDerivation> &ds)
    : c_(std::move(c)), family_(ds), sums_(c_.slots())
{
    if (ds.size() != c_.slots()) {
        throw IncompatibleAmbient("coefficient table has " + std::to_string(c_.slots()) + " slots but the family has "
                                  + std::to_string(ds.size()) + " members");
    }
    if (family_.nvars() != c_.nvars() || !(family_.field() == c_.field())) {
        throw IncompatibleAmbient("coefficient table and family live in different rings");
    }
}

const Series &FormulaEvaluator::coordinate_sum(std::size_t d, std::size_t a, std::size_t b)
{
    auto &memo = sums_[d];
    if (auto it = memo.find({a, b}); it != memo.end()) {
        return it->second;
    }
    const auto &field = c_.field();
    const auto n = c_.nvars();
    Series value(field, n);
    if (b == 0) {
        value = a == 0 ? Series::one(field, n) : Series(field, n);
    } else {
        for (std::size_t l = 1; l + (b - 1) <= a && l <= c_.levels(); ++l) {
            const auto &cl = c_.at(l, d);
            if (!exact_zero(cl)) {
                value += cl * coordinate_sum(d, a - l, b - 1);
            }
        }
    }
    return memo.emplace(std::make_pair(a, b), std::move(value)).first->second;
}

const std::vector<std::pair<MultiIndex, Series>> &FormulaEvaluator::groups(std::size_t i)
{
    if (auto it = grouped_.find(i); it != grouped_.end()) {
        return it->second;
    }
    const auto slots = c_.slots();
    std::vector<std::pair<MultiIndex, Series>> out;
    for (std::size_t m = 1; m <= i; ++m) {
        // pairs come grouped by lambda; regroup by mu
        std::map<MultiIndex, Series, GradedLexLess> by_mu;
        for (const auto &[lambda, mu] : enumerate_pairs(i, m, slots)) {
            auto coeff = Series::one(c_.field(), c_.nvars());
            for (std::size_t d = 0; d < slots && !exact_zero(coeff); ++d) {
                coeff *= coordinate_sum(d, lambda[d], mu[d]);
            }
            if (exact_zero(coeff)) {
                continue;
            }
            auto [it, fresh] = by_mu.try_emplace(mu, coeff);
            if (!fresh) {
                it->second += coeff;
            }
        }
        for (auto &[mu, coeff] : by_mu) {
            if (!exact_zero(coeff)) {
                out.emplace_back(mu, std::move(coeff));
            }
        }
    }
    return grouped_.emplace(i, std::move(out)).first->second;
}

Series FormulaEvaluator::grouped_coefficient(std::size_t i, const MultiIndex &mu)
{
    for (const auto &[m, coeff] : groups(i)) {
        if (m == mu) {
            return coeff;
        }
    }
    return Series(c_.field(), c_.nvars());
}

Series FormulaEvaluator::evaluate(std::size_t i, const Series &f, std::size_t min_m)
{
    Series acc(c_.field(), c_.nvars(), f.precision().lowered(i));
    for (const auto &[mu, coeff] : groups(i)) {
        if (mu.total_degree() < min_m) {
            continue;
        }
        acc += coeff * family_.compose(mu, f);
    }
    return acc;
}

Series formula_grande(const CoeffTable &c, const std::vector<HSDerivation> &ds, std::size_t i, const Series &f)
{
    for (const auto &d : ds) {
        if (i > d.length()) {
            throw ComponentOutOfRange("weight " + std::to_string(i) + " exceeds family member length "
                                      + std::to_string(d.length()));
        }
    }
    FormulaEvaluator ev(c, ds);
    return ev.evaluate(i, f);
}

} // namespace hsd
