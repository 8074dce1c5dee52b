#include <hsd/coefffield.hpp>

#include <algorithm>

#include <hsd/decompose.hpp>
#include <hsd/error.hpp>

namespace hsd
{

QuotientBasis::QuotientBasis(std::size_t nvars, std::uint64_t order)
    : nvars_(nvars), order_(order), monomials_(multi_indices_below(nvars, static_cast<std::uint32_t>(order)))
{
}

std::optional<std::size_t> QuotientBasis::index_of(const MultiIndex &beta) const
{
    if (beta.size() != nvars_ || beta.total_degree() >= order_) {
        return std::nullopt;
    }
    auto it = std::lower_bound(monomials_.begin(), monomials_.end(), beta, GradedLexLess{});
    if (it != monomials_.end() && *it == beta) {
        return static_cast<std::size_t>(it - monomials_.begin());
    }
    return std::nullopt;
}

std::vector<Scalar> QuotientBasis::coordinates(const Series &f) const
{
    if (f.nvars() != nvars_) {
        throw IncompatibleAmbient("series does not live in the quotient's ring");
    }
    std::vector<Scalar> out(size(), Scalar::zero(f.field()));
    for (const auto &[beta, c] : f.terms()) {
        if (auto idx = index_of(beta)) {
            out[*idx] = c;
        }
    }
    return out;
}

Series QuotientBasis::from_coordinates(const FieldSpec &field, const std::vector<Scalar> &coords) const
{
    std::vector<Series::term_type> terms;
    for (std::size_t b = 0; b < size(); ++b) {
        terms.emplace_back(monomials_[b], coords[b]);
    }
    return Series(field, nvars_, Precision::finite(order_), std::move(terms));
}

std::vector<Scalar> ComponentMatrix::apply(const std::vector<Scalar> &coords) const
{
    if (coords.size() != source.size()) {
        throw LengthMismatch("coordinate vector does not match the source basis");
    }
    std::vector<Scalar> out(target.size(), Scalar::zero(field));
    for (std::size_t r = 0; r < target.size(); ++r) {
        for (std::size_t c = 0; c < source.size(); ++c) {
            if (!rows[r][c].is_zero()) {
                out[r] += rows[r][c] * coords[c];
            }
        }
    }
    return out;
}

ComponentMatrix component_matrix(const HSDerivation &d, std::size_t i, std::uint64_t order)
{
    if (i >= order) {
        throw PrecisionExhausted("component " + std::to_string(i) + " maps k[X]/(X)^" + std::to_string(order)
                                 + " to zero");
    }
    if (i > d.length()) {
        throw ComponentOutOfRange("component " + std::to_string(i) + " requested from an HS derivation of length "
                                  + std::to_string(d.length()));
    }
    const auto &field = d.field();
    ComponentMatrix mat{QuotientBasis(d.nvars(), order), QuotientBasis(d.nvars(), order - i), i,
                        "D_" + std::to_string(i), field, {}};
    mat.rows.assign(mat.target.size(), std::vector<Scalar>(mat.source.size(), Scalar::zero(field)));
    ComponentEvaluator ev(d);
    for (std::size_t c = 0; c < mat.source.size(); ++c) {
        const auto &image = ev.on_monomial(i, mat.source.monomials()[c]);
        for (const auto &[mono, v] : image.terms()) {
            if (auto r = mat.target.index_of(mono)) {
                mat.rows[*r][c] = v;
            }
        }
    }
    return mat;
}

ComponentMatrix compose_matrices(const ComponentMatrix &a, const ComponentMatrix &b)
{
    if (!(b.target == a.source) || !(a.field == b.field)) {
        throw IncompatibleAmbient("component matrices cannot be composed: bases do not line up");
    }
    ComponentMatrix out{b.source, a.target, a.weight + b.weight, a.label + " o " + b.label, a.field, {}};
    out.rows.assign(out.target.size(), std::vector<Scalar>(out.source.size(), Scalar::zero(a.field)));
    for (std::size_t r = 0; r < out.target.size(); ++r) {
        for (std::size_t k = 0; k < a.source.size(); ++k) {
            if (a.rows[r][k].is_zero()) {
                continue;
            }
            for (std::size_t c = 0; c < out.source.size(); ++c) {
                if (!b.rows[k][c].is_zero()) {
                    out.rows[r][c] += a.rows[r][k] * b.rows[k][c];
                }
            }
        }
    }
    return out;
}

KernelReport joint_kernel(const QuotientBasis &source, const FieldSpec &field, const std::vector<ComponentMatrix> &mats)
{
    const auto ncols = source.size();
    std::vector<std::vector<Scalar>> a;
    std::string used;
    for (const auto &m : mats) {
        if (!(m.source == source) || !(m.field == field)) {
            throw IncompatibleAmbient("kernel operators do not share the source quotient");
        }
        for (const auto &row : m.rows) {
            if (std::any_of(row.begin(), row.end(), [](const Scalar &s) { return !s.is_zero(); })) {
                a.push_back(row);
            }
        }
        used += (used.empty() ? "" : ", ") + m.label;
    }

    // Gauss-Jordan to reduced row echelon form.
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c].is_zero()) {
            ++p;
        }
        if (p == a.size()) {
            continue;
        }
        std::swap(a[r], a[p]);
        const auto inv = scalar_inv(a[r][c]);
        for (auto &x : a[r]) {
            x *= inv;
        }
        for (std::size_t q = 0; q < a.size(); ++q) {
            if (q == r || a[q][c].is_zero()) {
                continue;
            }
            const auto factor = a[q][c];
            for (std::size_t k = c; k < ncols; ++k) {
                if (!a[r][k].is_zero()) {
                    a[q][k] -= factor * a[r][k];
                }
            }
        }
        pivot_cols.push_back(c);
        ++r;
    }

    KernelReport report;
    report.order = source.order();
    report.operators_used = used.empty() ? "none" : used;
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : pivot_cols) {
        is_pivot[c] = true;
    }
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free]) {
            continue;
        }
        std::vector<Scalar> v(ncols, Scalar::zero(field));
        v[free] = Scalar::one(field);
        for (std::size_t k = 0; k < pivot_cols.size(); ++k) {
            v[pivot_cols[k]] = -a[k][free];
        }
        report.basis.push_back(source.from_coordinates(field, v));
    }
    report.dimension = report.basis.size();
    return report;
}

KernelReport coefficient_field(const std::vector<HSDerivation> &ds, std::uint64_t order,
                               std::optional<std::size_t> max_weight)
{
    const auto mat = degree1_matrix(ds);
    if (!mat.det_unit) {
        throw NotABasis("degree-1 parts do not form a basis: det = " + mat.det.to_string());
    }
    if (order == 0) {
        throw PrecisionExhausted("truncation order must be positive");
    }
    const auto top = std::min<std::uint64_t>(max_weight.value_or(order - 1), order - 1);
    const auto &field = ds.front().field();
    QuotientBasis source(ds.front().nvars(), order);
    std::vector<ComponentMatrix> mats;
    for (std::size_t d = 0; d < ds.size(); ++d) {
        for (std::size_t i = 1; i <= top; ++i) {
            auto cm = component_matrix(ds[d], i, order);
            cm.label = "D" + std::to_string(d + 1) + "_" + std::to_string(i);
            mats.push_back(std::move(cm));
        }
    }
    return joint_kernel(source, field, mats);
}

bool nomura_unit_test(const std::vector<HSDerivation> &ds, const std::vector<Series> &points)
{
    if (ds.empty() || points.size() != ds.size()) {
        throw IncompatibleAmbient("need one point per family member");
    }
    const auto n = ds.size();
    std::vector<std::vector<Series>> m(n, std::vector<Series>(n));
    for (std::size_t d = 0; d < n; ++d) {
        ComponentEvaluator ev(ds[d]);
        for (std::size_t j = 0; j < n; ++j) {
            m[j][d] = ev(1, points[j]);
        }
    }
    return !determinant(m).constant_term().is_zero();
}

} // namespace hsd
