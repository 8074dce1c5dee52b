#ifndef HSD_DECOMPOSE_HPP
#define HSD_DECOMPOSE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <hsd/formula.hpp>
#include <hsd/hsderiv.hpp>
#include <hsd/series.hpp>

namespace hsd
{

// M[j][d] = D^d_1(X_j) for a family D^1..D^n of HS derivations of k[X_1..X_n].
struct Degree1Matrix {
    std::vector<std::vector<Series>> entries;
    Series det;
    // det has a nonzero constant term
    bool det_unit = false;

    std::size_t size() const
    {
        return entries.size();
    }
};

// Laplace expansion; fine for the small n this library targets.
Series determinant(const std::vector<std::vector<Series>> &m);

Degree1Matrix degree1_matrix(const std::vector<HSDerivation> &ds);

// The operator at level N obtained by removing every |mu| >= 2 term of the
// master formula from the target's N-th component:
//   delta(f) = T_N(f) - sum_{m=2}^{N} sum_{|lambda|=N,|mu|=m} coeff(lambda,mu) D_mu(f).
// Only table rows 1..N-1 are read. delta is a derivation whenever the formula
// holds for the lower levels.
class ResidualOperator
{
public:
    ResidualOperator(const HSDerivation &target, const std::vector<HSDerivation> &ds, const CoeffTable &partial,
                     std::size_t level);

    std::size_t level() const
    {
        return level_;
    }
    Series operator()(const Series &f);

private:
    std::size_t level_;
    ComponentEvaluator target_;
    FormulaEvaluator formula_;
};

Series residual(const HSDerivation &target, const std::vector<HSDerivation> &ds, const CoeffTable &partial,
                std::size_t level, const Series &f);

// Solves delta(X_j) = sum_d M[j][d] C_d for C. Exact when det(M) is a nonzero
// constant and the inputs are exact; otherwise det(M) is inverted as a series
// and the result is known modulo (X)^out_precision.
// Throws NotABasis when M.det_unit is false.
std::vector<Series> solve_derivation_coords(const std::vector<Series> &delta_on_vars, const Degree1Matrix &m,
                                            std::uint64_t out_precision);

struct DecompositionWitness {
    std::size_t component = 0;
    MultiIndex beta;
    Series lhs, rhs;
};

struct VerifyReport {
    bool passed = true;
    // Highest total degree on which every component agreed; -1 if none.
    int verified_to_degree = -1;
    std::optional<DecompositionWitness> witness;
};

// Compares formula_grande(C, ds, i, X^beta) with the target's i-th component on
// X^beta for all i <= min(length, table levels) and |beta| <= max_degree,
// modulo the precision both sides are trusted to.
VerifyReport verify_decomposition(const HSDerivation &target, const std::vector<HSDerivation> &ds,
                                  const CoeffTable &c, std::uint32_t max_degree);

struct DecompositionResult {
    CoeffTable c;
    int verified_to_degree = -1;
    std::vector<std::string> basis_order;
    std::optional<DecompositionWitness> witness;
};

// Level-by-level computation of the unique table expressing target through a
// family whose degree-1 parts form a basis. Throws NotABasis when they do not,
// PrecisionExhausted when out_precision <= length. The result is verified on
// monomials up to verify_degree.
DecompositionResult decompose(const HSDerivation &target, const std::vector<HSDerivation> &ds,
                              std::uint64_t out_precision, std::uint32_t verify_degree = 3,
                              std::vector<std::string> names = {});

} // namespace hsd

#endif
