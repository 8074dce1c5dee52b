#include <hsd/decompose.hpp>

#include <hsd/error.hpp>

namespace hsd
{

namespace
{

std::vector<std::vector<Series>> minor_of(const std::vector<std::vector<Series>> &m, std::size_t row, std::size_t col)
{
    std::vector<std::vector<Series>> out;
    for (std::size_t r = 0; r < m.size(); ++r) {
        if (r == row) {
            continue;
        }
        std::vector<Series> line;
        for (std::size_t c = 0; c < m.size(); ++c) {
            if (c != col) {
                line.push_back(m[r][c]);
            }
        }
        out.push_back(std::move(line));
    }
    return out;
}

void check_family(const std::vector<HSDerivation> &ds)
{
    if (ds.empty()) {
        throw InvalidInput("empty HS derivation family");
    }
    const auto n = ds.front().nvars();
    if (ds.size() != n) {
        throw IncompatibleAmbient("family has " + std::to_string(ds.size()) + " members for " + std::to_string(n)
                                  + " variables");
    }
    for (const auto &d : ds) {
        if (d.nvars() != n || !(d.field() == ds.front().field())) {
            throw IncompatibleAmbient("family members live in different rings");
        }
    }
}

} // namespace

Series determinant(const std::vector<std::vector<Series>> &m)
{
    const auto n = m.size();
    if (n == 0) {
        throw InvalidInput("determinant of an empty matrix");
    }
    if (n == 1) {
        return m[0][0];
    }
    Series acc(m[0][0].field(), m[0][0].nvars());
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c].is_zero() && m[0][c].is_exact()) {
            continue;
        }
        auto term = m[0][c] * determinant(minor_of(m, 0, c));
        if (c % 2 == 0) {
            acc += term;
        } else {
            acc -= term;
        }
    }
    return acc;
}

Degree1Matrix degree1_matrix(const std::vector<HSDerivation> &ds)
{
    check_family(ds);
    const auto n = ds.size();
    const auto &field = ds.front().field();
    Degree1Matrix out;
    out.entries.assign(n, std::vector<Series>(n));
    for (std::size_t d = 0; d < n; ++d) {
        for (std::size_t j = 0; j < n; ++j) {
            out.entries[j][d] = apply_component(ds[d], 1, Series::variable(field, n, j));
        }
    }
    out.det = determinant(out.entries);
    out.det_unit = !out.det.constant_term().is_zero();
    return out;
}

ResidualOperator::ResidualOperator(const HSDerivation &target, const std::vector<HSDerivation> &ds,
                                   const CoeffTable &partial, std::size_t level)
    : level_(level), target_(target), formula_(partial, ds)
{
    if (level < 1 || level > target.length()) {
        throw ComponentOutOfRange("residual level " + std::to_string(level) + " outside 1.."
                                  + std::to_string(target.length()));
    }
    for (const auto &d : ds) {
        if (level > d.length()) {
            throw ComponentOutOfRange("residual level " + std::to_string(level) + " exceeds family member length "
                                      + std::to_string(d.length()));
        }
    }
}

Series ResidualOperator::operator()(const Series &f)
{
    return target_(level_, f) - formula_.evaluate(level_, f, 2);
}

Series residual(const HSDerivation &target, const std::vector<HSDerivation> &ds, const CoeffTable &partial,
                std::size_t level, const Series &f)
{
    ResidualOperator op(target, ds, partial, level);
    return op(f);
}

std::vector<Series> solve_derivation_coords(const std::vector<Series> &delta_on_vars, const Degree1Matrix &m,
                                            std::uint64_t out_precision)
{
    if (!m.det_unit) {
        throw NotABasis("degree-1 matrix has determinant " + m.det.to_string() + ", not a unit");
    }
    const auto n = m.size();
    if (delta_on_vars.size() != n) {
        throw LengthMismatch("derivation given on " + std::to_string(delta_on_vars.size()) + " variables, matrix is "
                             + std::to_string(n) + "x" + std::to_string(n));
    }
    const auto &field = m.det.field();
    const auto nvars = m.det.nvars();
    // C = adj(M) delta / det(M)
    std::vector<Series> out;
    for (std::size_t d = 0; d < n; ++d) {
        Series acc(field, nvars);
        for (std::size_t j = 0; j < n; ++j) {
            auto cof = n == 1 ? Series::one(field, nvars) : determinant(minor_of(m.entries, j, d));
            auto term = cof * delta_on_vars[j];
            if ((j + d) % 2 == 0) {
                acc += term;
            } else {
                acc -= term;
            }
        }
        out.push_back(std::move(acc));
    }
    if (m.det.is_constant() && m.det.is_exact()) {
        const auto inv = scalar_inv(m.det.constant_term());
        for (auto &c : out) {
            c *= inv;
        }
    } else {
        const auto inv = series_inverse(m.det, out_precision);
        for (auto &c : out) {
            c = (c * inv).truncated(Precision::finite(out_precision));
        }
    }
    return out;
}

VerifyReport verify_decomposition(const HSDerivation &target, const std::vector<HSDerivation> &ds,
                                  const CoeffTable &c, std::uint32_t max_degree)
{
    VerifyReport report;
    const auto n = target.nvars();
    const auto &field = target.field();
    std::size_t m = std::min(target.length(), c.levels());
    for (const auto &d : ds) {
        m = std::min(m, d.length());
    }
    ComponentEvaluator lhs_eval(target);
    FormulaEvaluator rhs_eval(c, ds);
    for (std::uint32_t deg = 0; deg <= max_degree; ++deg) {
        for (const auto &beta : multi_indices_of_degree(n, deg)) {
            const auto f = Series::monomial(field, beta, Scalar::one(field));
            for (std::size_t i = 1; i <= m; ++i) {
                auto lhs = lhs_eval(i, f);
                auto rhs = rhs_eval.evaluate(i, f);
                if (!agrees(lhs, rhs)) {
                    report.passed = false;
                    report.witness = DecompositionWitness{i, beta, std::move(lhs), std::move(rhs)};
                    return report;
                }
            }
        }
        report.verified_to_degree = static_cast<int>(deg);
    }
    return report;
}

DecompositionResult decompose(const HSDerivation &target, const std::vector<HSDerivation> &ds,
                              std::uint64_t out_precision, std::uint32_t verify_degree, std::vector<std::string> names)
{
    check_family(ds);
    const auto n = target.nvars();
    const auto m = target.length();
    const auto &field = target.field();
    if (ds.front().nvars() != n || !(ds.front().field() == field)) {
        throw IncompatibleAmbient("target and family live in different rings");
    }
    for (const auto &d : ds) {
        if (d.length() != m) {
            throw IncompatibleAmbient("target has length " + std::to_string(m) + " but a family member has length "
                                      + std::to_string(d.length()));
        }
    }
    if (out_precision <= m) {
        throw PrecisionExhausted("output precision " + std::to_string(out_precision)
                                 + " leaves nothing after a length-" + std::to_string(m) + " decomposition");
    }
    const auto mat = degree1_matrix(ds);
    if (!mat.det_unit) {
        throw NotABasis("degree-1 parts do not form a basis: det = " + mat.det.to_string());
    }

    DecompositionResult result;
    result.c = CoeffTable(field, n, m, n);
    if (names.empty()) {
        for (std::size_t d = 0; d < n; ++d) {
            names.push_back("D" + std::to_string(d + 1));
        }
    }
    result.basis_order = std::move(names);

    for (std::size_t level = 1; level <= m; ++level) {
        ResidualOperator delta(target, ds, result.c, level);
        std::vector<Series> on_vars;
        for (std::size_t j = 0; j < n; ++j) {
            on_vars.push_back(delta(Series::variable(field, n, j)));
        }
        auto coords = solve_derivation_coords(on_vars, mat, out_precision);
        for (std::size_t d = 0; d < n; ++d) {
            result.c.at(level, d) = std::move(coords[d]);
        }
    }

    auto report = verify_decomposition(target, ds, result.c, verify_degree);
    result.verified_to_degree = report.verified_to_degree;
    result.witness = std::move(report.witness);
    return result;
}

} // namespace hsd
