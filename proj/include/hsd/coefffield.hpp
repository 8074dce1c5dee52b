#ifndef HSD_COEFFFIELD_HPP
#define HSD_COEFFFIELD_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <hsd/hsderiv.hpp>
#include <hsd/multi_index.hpp>
#include <hsd/series.hpp>

namespace hsd
{

// Monomial basis of k[X_1..X_n]/(X)^N in graded-lex order.
class QuotientBasis
{
public:
    QuotientBasis(std::size_t nvars, std::uint64_t order);

    std::size_t nvars() const
    {
        return nvars_;
    }
    std::uint64_t order() const
    {
        return order_;
    }
    std::size_t size() const
    {
        return monomials_.size();
    }
    const std::vector<MultiIndex> &monomials() const
    {
        return monomials_;
    }
    // Position of beta; nullopt when |beta| >= N.
    std::optional<std::size_t> index_of(const MultiIndex &beta) const;

    std::vector<Scalar> coordinates(const Series &f) const;
    Series from_coordinates(const FieldSpec &field, const std::vector<Scalar> &coords) const;

    friend bool operator==(const QuotientBasis &a, const QuotientBasis &b)
    {
        return a.nvars_ == b.nvars_ && a.order_ == b.order_;
    }

private:
    std::size_t nvars_;
    std::uint64_t order_;
    std::vector<MultiIndex> monomials_;
};

// Matrix of the map k[X]/(X)^N -> k[X]/(X)^{N-i} induced by a weight-i
// component. Column b holds the coordinates of D_i(X^{beta_b}).
struct ComponentMatrix {
    QuotientBasis source;
    QuotientBasis target;
    std::size_t weight = 0;
    std::string label;
    FieldSpec field;
    std::vector<std::vector<Scalar>> rows;

    std::vector<Scalar> apply(const std::vector<Scalar> &coords) const;
};

// Throws PrecisionExhausted if i >= N, ComponentOutOfRange if i > length.
ComponentMatrix component_matrix(const HSDerivation &d, std::size_t i, std::uint64_t order);

// Matrix product a * b (b applied first); b.target must equal a.source.
ComponentMatrix compose_matrices(const ComponentMatrix &a, const ComponentMatrix &b);

struct KernelReport {
    std::uint64_t order = 0;
    std::size_t dimension = 0;
    std::vector<Series> basis;
    std::string operators_used;
};

// Basis of the common kernel, by Gauss-Jordan elimination over the field.
// Basis vectors are normalized to have coefficient 1 on their free monomial.
KernelReport joint_kernel(const QuotientBasis &source, const FieldSpec &field,
                          const std::vector<ComponentMatrix> &mats);

// Joint kernel of components 1..max_weight of every member on k[X]/(X)^N.
// max_weight defaults to N-1 (higher components vanish on the quotient).
// Throws NotABasis when the degree-1 parts of ds do not form a basis.
KernelReport coefficient_field(const std::vector<HSDerivation> &ds, std::uint64_t order,
                               std::optional<std::size_t> max_weight = std::nullopt);

// det(D^d_1(a_j)) has a nonzero constant term.
bool nomura_unit_test(const std::vector<HSDerivation> &ds, const std::vector<Series> &points);

} // namespace hsd

#endif
