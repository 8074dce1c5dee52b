#include <hsd/hsderiv.hpp>

#include <algorithm>

#include <hsd/error.hpp>

namespace hsd
{

HSDerivation::HSDerivation(std::vector<TSeries> images) : images_(std::move(images))
{
    if (images_.empty()) {
        throw InvalidInput("HS derivation needs at least one variable");
    }
    const auto n = images_.size();
    const auto m = images_.front().tlen();
    if (m < 1) {
        throw InvalidInput("HS derivation length must be >= 1");
    }
    const auto field = images_.front().field();
    for (std::size_t j = 0; j < n; ++j) {
        const auto &im = images_[j];
        if (im.tlen() != m) {
            throw InvalidInput("HS derivation images have different lengths");
        }
        if (im.nvars() != n || !(im.field() == field)) {
            throw InvalidInput("HS derivation image " + std::to_string(j + 1) + " lives in the wrong ring");
        }
        for (const auto &c : im.coeffs()) {
            if (!c.is_exact()) {
                throw InvalidInput("HS derivation images must be exact polynomials");
            }
        }
        if (!(im[0] == Series::variable(field, n, j))) {
            throw InvalidInput("t^0 coefficient of image " + std::to_string(j + 1) + " must be X"
                               + std::to_string(j + 1) + ", got " + im[0].to_string());
        }
    }
}

HSDerivation HSDerivation::identity(const FieldSpec &field, std::size_t nvars, std::size_t length)
{
    std::vector<TSeries> images;
    for (std::size_t j = 0; j < nvars; ++j) {
        images.push_back(TSeries::constant(Series::variable(field, nvars, j), length));
    }
    return HSDerivation(std::move(images));
}

HSDerivation HSDerivation::from_components(const FieldSpec &field, std::size_t nvars,
                                           const std::vector<std::vector<Series>> &components)
{
    const auto m = components.size();
    std::vector<TSeries> images;
    for (std::size_t j = 0; j < nvars; ++j) {
        std::vector<Series> c{Series::variable(field, nvars, j)};
        for (std::size_t i = 0; i < m; ++i) {
            if (components[i].size() != nvars) {
                throw InvalidInput("component table row " + std::to_string(i + 1) + " has wrong width");
            }
            c.push_back(components[i][j]);
        }
        images.emplace_back(std::move(c));
    }
    return HSDerivation(std::move(images));
}

Derivation::Derivation(std::vector<Series> values) : values_(std::move(values))
{
    if (values_.empty()) {
        throw InvalidInput("derivation needs at least one variable");
    }
    for (const auto &v : values_) {
        if (v.nvars() != values_.size()) {
            throw IncompatibleAmbient("derivation value lives in the wrong number of variables");
        }
        values_.front().check_compatible(v);
    }
}

Series partial_derivative(const Series &f, std::size_t j)
{
    std::vector<Series::term_type> terms;
    for (const auto &[beta, c] : f.terms()) {
        if (beta[j] == 0) {
            continue;
        }
        auto b = beta;
        --b[j];
        terms.emplace_back(std::move(b), c * Scalar(f.field(), static_cast<long>(beta[j])));
    }
    return Series(f.field(), f.nvars(), f.precision().lowered(1), std::move(terms));
}

Series Derivation::operator()(const Series &f) const
{
    if (f.nvars() != nvars()) {
        throw IncompatibleAmbient("derivation applied to a series in the wrong ring");
    }
    Series r(f.field(), f.nvars(), f.precision().lowered(1));
    for (std::size_t j = 0; j < nvars(); ++j) {
        r += values_[j] * partial_derivative(f, j);
    }
    return r;
}

ComponentEvaluator::ComponentEvaluator(const HSDerivation &d) : length_(d.length()), sub_(d.images()) {}

Series ComponentEvaluator::operator()(std::size_t i, const Series &f)
{
    if (i > length_) {
        throw ComponentOutOfRange("component " + std::to_string(i) + " requested from an HS derivation of length "
                                  + std::to_string(length_));
    }
    return sub_.coefficient(f, i);
}

const Series &ComponentEvaluator::on_monomial(std::size_t i, const MultiIndex &beta)
{
    if (i > length_) {
        throw ComponentOutOfRange("component " + std::to_string(i) + " requested from an HS derivation of length "
                                  + std::to_string(length_));
    }
    return sub_.monomial_image(beta)[i];
}

Series apply_component(const HSDerivation &d, std::size_t i, const Series &f)
{
    ComponentEvaluator ev(d);
    return ev(i, f);
}

HSDerivation taylor_hsd(std::size_t j, std::size_t length, std::size_t nvars, const FieldSpec &field)
{
    if (j >= nvars) {
        throw InvalidInput("Taylor direction " + std::to_string(j + 1) + " out of range for "
                           + std::to_string(nvars) + " variables");
    }
    std::vector<TSeries> images;
    for (std::size_t l = 0; l < nvars; ++l) {
        auto im = TSeries::constant(Series::variable(field, nvars, l), length);
        if (l == j) {
            im[1] = Series::one(field, nvars);
        }
        images.push_back(std::move(im));
    }
    return HSDerivation(std::move(images));
}

std::vector<HSDerivation> taylor_basis(std::size_t nvars, std::size_t length, const FieldSpec &field)
{
    std::vector<HSDerivation> out;
    for (std::size_t j = 0; j < nvars; ++j) {
        out.push_back(taylor_hsd(j, length, nvars, field));
    }
    return out;
}

std::map<MultiIndex, Series, GradedLexLess> taylor_delta_table(const Series &f, const MultiIndex &alpha_max)
{
    const auto n = f.nvars();
    if (alpha_max.size() != n) {
        throw LengthMismatch("alpha_max has " + std::to_string(alpha_max.size()) + " entries, expected "
                             + std::to_string(n));
    }
    if (!f.is_exact()) {
        throw InvalidInput("taylor_delta_table needs an exact polynomial");
    }
    const auto &field = f.field();
    // Work in k[X_1..X_n, T_1..T_n] and substitute X_j -> X_j + T_j.
    std::vector<TSeries> shift;
    for (std::size_t j = 0; j < n; ++j) {
        shift.push_back(TSeries::constant(Series::variable(field, 2 * n, j) + Series::variable(field, 2 * n, n + j), 0));
    }
    for (std::size_t j = 0; j < n; ++j) {
        shift.push_back(TSeries::constant(Series::variable(field, 2 * n, n + j), 0));
    }
    std::vector<Series::term_type> lifted;
    for (const auto &[beta, c] : f.terms()) {
        MultiIndex b(2 * n);
        for (std::size_t j = 0; j < n; ++j) {
            b[j] = beta[j];
        }
        lifted.emplace_back(std::move(b), c);
    }
    const auto shifted = substitute(Series(field, 2 * n, Precision::exact(), std::move(lifted)), shift)[0];

    std::map<MultiIndex, std::vector<Series::term_type>, GradedLexLess> parts;
    for (const auto &alpha : multi_indices_in_box(alpha_max)) {
        parts[alpha];
    }
    for (const auto &[mono, c] : shifted.terms()) {
        MultiIndex x(n), t(n);
        for (std::size_t j = 0; j < n; ++j) {
            x[j] = mono[j];
            t[j] = mono[n + j];
        }
        if (auto it = parts.find(t); it != parts.end()) {
            it->second.emplace_back(std::move(x), c);
        }
    }
    std::map<MultiIndex, Series, GradedLexLess> out;
    for (auto &[alpha, terms] : parts) {
        out.emplace(alpha, Series(field, n, Precision::exact(), std::move(terms)));
    }
    return out;
}

HSDerivation integrate(const Derivation &delta, std::size_t length)
{
    const auto n = delta.nvars();
    std::vector<TSeries> images;
    for (std::size_t j = 0; j < n; ++j) {
        if (!delta.values()[j].is_exact()) {
            throw InvalidInput("integrate: derivation values must be exact polynomials");
        }
        auto im = TSeries::constant(Series::variable(delta.field(), n, j), length);
        im[1] = delta.values()[j];
        images.push_back(std::move(im));
    }
    return HSDerivation(std::move(images));
}

namespace
{

void check_same_shape(const HSDerivation &a, const HSDerivation &b)
{
    if (a.nvars() != b.nvars() || a.length() != b.length() || !(a.field() == b.field())) {
        throw IncompatibleAmbient("HS derivations differ in variable count, length or field");
    }
}

} // namespace

HSDerivation group_compose(const HSDerivation &d, const HSDerivation &dp)
{
    check_same_shape(d, dp);
    const auto n = d.nvars(), m = d.length();
    Substitution ed(d.images());
    std::vector<TSeries> images;
    for (std::size_t j = 0; j < n; ++j) {
        TSeries acc(d.field(), n, m);
        for (std::size_t s = 0; s <= m; ++s) {
            const auto &g = dp.image_component(s, j);
            if (!g.is_zero()) {
                acc += ed(g).shifted(s);
            }
        }
        images.push_back(std::move(acc));
    }
    return HSDerivation(std::move(images));
}

HSDerivation group_inverse(const HSDerivation &d)
{
    const auto n = d.nvars(), m = d.length();
    ComponentEvaluator ev(d);
    // comps[i][j] = D'_i(X_j)
    std::vector<std::vector<Series>> comps(m + 1);
    for (std::size_t j = 0; j < n; ++j) {
        comps[0].push_back(Series::variable(d.field(), n, j));
    }
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Series acc(d.field(), n);
            for (std::size_t r = 1; r <= i; ++r) {
                acc -= ev(r, comps[i - r][j]);
            }
            comps[i].push_back(std::move(acc));
        }
    }
    comps.erase(comps.begin());
    return HSDerivation::from_components(d.field(), n, comps);
}

FamilyEvaluator::FamilyEvaluator(const std::vector<HSDerivation> &ds)
{
    if (ds.empty()) {
        throw InvalidInput("empty HS derivation family");
    }
    field_ = ds.front().field();
    nvars_ = ds.front().nvars();
    for (const auto &d : ds) {
        if (d.nvars() != nvars_ || !(d.field() == field_)) {
            throw IncompatibleAmbient("HS derivation family members live in different rings");
        }
        evals_.emplace_back(d);
    }
}

const Series &FamilyEvaluator::compose_on_monomial(const MultiIndex &mu, const MultiIndex &beta)
{
    if (mu.size() != evals_.size()) {
        throw LengthMismatch("weight " + mu.to_string() + " does not match a family of size "
                             + std::to_string(evals_.size()));
    }
    MultiIndex key(mu.size() + beta.size());
    for (std::size_t d = 0; d < mu.size(); ++d) {
        key[d] = mu[d];
    }
    for (std::size_t j = 0; j < beta.size(); ++j) {
        key[mu.size() + j] = beta[j];
    }
    if (auto it = memo_.find(key); it != memo_.end()) {
        return it->second;
    }
    std::size_t first = 0;
    while (first < mu.size() && mu[first] == 0) {
        ++first;
    }
    Series value;
    if (first == mu.size()) {
        value = Series::monomial(field_, beta, Scalar::one(field_));
    } else {
        if (mu[first] > evals_[first].length()) {
            throw ComponentOutOfRange("component " + std::to_string(mu[first]) + " of family member "
                                      + std::to_string(first + 1) + " exceeds its length "
                                      + std::to_string(evals_[first].length()));
        }
        auto inner = mu;
        inner[first] = 0;
        value = evals_[first](mu[first], compose_on_monomial(inner, beta));
    }
    return memo_.emplace(std::move(key), std::move(value)).first->second;
}

Series FamilyEvaluator::compose(const MultiIndex &mu, const Series &f)
{
    if (f.nvars() != nvars_ || !(f.field() == field_)) {
        throw IncompatibleAmbient("composite operator applied to a series in the wrong ring");
    }
    const auto prec = f.precision().lowered(mu.total_degree());
    std::vector<Series::term_type> acc;
    for (const auto &[beta, c] : f.terms()) {
        for (const auto &[mono, v] : compose_on_monomial(mu, beta).terms()) {
            acc.emplace_back(mono, c * v);
        }
    }
    return Series(field_, nvars_, prec, std::move(acc));
}

Series compose_multi(const std::vector<HSDerivation> &ds, const MultiIndex &mu, const Series &f)
{
    FamilyEvaluator fe(ds);
    return fe.compose(mu, f);
}

namespace
{

LeibnizReport run_pairs(const FieldSpec &field, std::size_t nvars, const LeibnizOptions &opts,
                        const std::function<std::optional<LeibnizWitness>(const Series &, const Series &)> &check)
{
    LeibnizReport report;
    report.seed = opts.seed;
    std::vector<Series> basis;
    for (const auto &beta : multi_indices_below(nvars, opts.basis_degree + 1)) {
        basis.push_back(Series::monomial(field, beta, Scalar::one(field)));
    }
    for (const auto &f : basis) {
        for (const auto &g : basis) {
            ++report.pairs_checked;
            if (auto w = check(f, g)) {
                report.passed = false;
                report.witness = std::move(w);
                return report;
            }
        }
    }
    std::mt19937_64 rng(opts.seed);
    for (std::size_t t = 0; t < opts.trials; ++t) {
        auto f = random_polynomial(field, nvars, opts.random_degree, opts.random_terms, rng);
        auto g = random_polynomial(field, nvars, opts.random_degree, opts.random_terms, rng);
        ++report.pairs_checked;
        if (auto w = check(f, g)) {
            report.passed = false;
            report.witness = std::move(w);
            return report;
        }
    }
    return report;
}

} // namespace

LeibnizReport leibniz_check(const ComponentFamily &family, std::size_t length, const FieldSpec &field,
                            std::size_t nvars, const LeibnizOptions &opts)
{
    return run_pairs(field, nvars, opts, [&](const Series &f, const Series &g) -> std::optional<LeibnizWitness> {
        std::vector<Series> df, dg;
        for (std::size_t i = 0; i <= length; ++i) {
            df.push_back(family(i, f));
            dg.push_back(family(i, g));
        }
        for (std::size_t i = 0; i <= length; ++i) {
            auto lhs = family(i, f * g);
            Series rhs(field, nvars);
            for (std::size_t r = 0; r <= i; ++r) {
                rhs += df[r] * dg[i - r];
            }
            if (!agrees(lhs, rhs)) {
                return LeibnizWitness{i, f, g, std::move(lhs), std::move(rhs)};
            }
        }
        return std::nullopt;
    });
}

LeibnizReport leibniz_check(const HSDerivation &d, const LeibnizOptions &opts)
{
    ComponentEvaluator ev(d);
    return leibniz_check([&](std::size_t i, const Series &f) { return ev(i, f); }, d.length(), d.field(), d.nvars(),
                         opts);
}

LeibnizReport derivation_check(const std::function<Series(const Series &)> &delta, const FieldSpec &field,
                               std::size_t nvars, const LeibnizOptions &opts)
{
    return run_pairs(field, nvars, opts, [&](const Series &f, const Series &g) -> std::optional<LeibnizWitness> {
        auto lhs = delta(f * g);
        auto rhs = delta(f) * g + f * delta(g);
        if (!agrees(lhs, rhs)) {
            return LeibnizWitness{1, f, g, std::move(lhs), std::move(rhs)};
        }
        return std::nullopt;
    });
}

HSDerivation random_hsd(const FieldSpec &field, std::size_t nvars, std::size_t length, std::mt19937_64 &rng,
                        std::uint32_t max_degree, std::size_t max_terms)
{
    std::vector<std::vector<Series>> comps(length);
    for (auto &row : comps) {
        for (std::size_t j = 0; j < nvars; ++j) {
            row.push_back(random_polynomial(field, nvars, max_degree, max_terms, rng));
        }
    }
    return HSDerivation::from_components(field, nvars, comps);
}

} // namespace hsd
