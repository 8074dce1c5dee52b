#include <hsd/series.hpp>

#include <algorithm>
#include <cassert>
#include <sstream>

#include <hsd/error.hpp>

namespace hsd
{

Series::Series(const FieldSpec &field, std::size_t nvars, Precision prec) : field_(field), nvars_(nvars), prec_(prec)
{
}

Series::Series(const FieldSpec &field, std::size_t nvars, Precision prec, std::vector<term_type> terms)
    : field_(field), nvars_(nvars), prec_(prec), terms_(std::move(terms))
{
    for (const auto &[m, c] : terms_) {
        if (m.size() != nvars_) {
            throw IncompatibleAmbient("monomial " + m.to_string() + " does not have " + std::to_string(nvars_)
                                      + " exponents");
        }
        if (!(c.field() == field_)) {
            throw IncompatibleAmbient("coefficient field " + c.field().to_string() + " differs from series field "
                                      + field_.to_string());
        }
    }
    normalize();
}

void Series::normalize()
{
    std::sort(terms_.begin(), terms_.end(),
              [](const term_type &a, const term_type &b) { return GradedLexLess{}(a.first, b.first); });
    std::vector<term_type> out;
    out.reserve(terms_.size());
    for (auto &t : terms_) {
        if (!prec_.admits(t.first.total_degree())) {
            continue;
        }
        if (!out.empty() && out.back().first == t.first) {
            out.back().second += t.second;
        } else {
            if (!out.empty() && out.back().second.is_zero()) {
                out.pop_back();
            }
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && out.back().second.is_zero()) {
        out.pop_back();
    }
    terms_ = std::move(out);
}

Series Series::constant(const FieldSpec &field, std::size_t nvars, const Scalar &c, Precision prec)
{
    return Series(field, nvars, prec, {{MultiIndex::zero(nvars), c}});
}

Series Series::one(const FieldSpec &field, std::size_t nvars, Precision prec)
{
    return constant(field, nvars, Scalar::one(field), prec);
}

Series Series::variable(const FieldSpec &field, std::size_t nvars, std::size_t j, Precision prec)
{
    return Series(field, nvars, prec, {{MultiIndex::unit(nvars, j), Scalar::one(field)}});
}

Series Series::monomial(const FieldSpec &field, const MultiIndex &beta, const Scalar &c, Precision prec)
{
    return Series(field, beta.size(), prec, {{beta, c}});
}

Scalar Series::coefficient(const MultiIndex &beta) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), beta,
                               [](const term_type &t, const MultiIndex &m) { return GradedLexLess{}(t.first, m); });
    if (it != terms_.end() && it->first == beta) {
        return it->second;
    }
    return Scalar::zero(field_);
}

Scalar Series::constant_term() const
{
    if (!terms_.empty() && terms_.front().first.is_zero()) {
        return terms_.front().second;
    }
    return Scalar::zero(field_);
}

bool Series::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.front().first.is_zero());
}

std::uint64_t Series::degree() const
{
    return terms_.empty() ? 0 : terms_.back().first.total_degree();
}

Series Series::truncated(Precision prec) const
{
    Series r(*this);
    if (prec < r.prec_) {
        r.prec_ = prec;
        std::erase_if(r.terms_, [&](const term_type &t) { return !prec.admits(t.first.total_degree()); });
    }
    return r;
}

void Series::check_compatible(const Series &o) const
{
    if (nvars_ != o.nvars_ || !(field_ == o.field_)) {
        throw IncompatibleAmbient("series ambient mismatch: " + field_.to_string() + "[" + std::to_string(nvars_)
                                  + " vars] vs " + o.field_.to_string() + "[" + std::to_string(o.nvars_) + " vars]");
    }
}

Series Series::operator-() const
{
    Series r(*this);
    for (auto &t : r.terms_) {
        t.second = -t.second;
    }
    return r;
}

namespace
{

template <typename Op>
Series merge(const Series &a, const Series &b, Op op)
{
    a.check_compatible(b);
    const auto prec = min(a.precision(), b.precision());
    std::vector<Series::term_type> out;
    out.reserve(a.size() + b.size());
    auto ia = a.terms().begin(), ea = a.terms().end();
    auto ib = b.terms().begin(), eb = b.terms().end();
    GradedLexLess less;
    auto push = [&](const MultiIndex &m, Scalar c) {
        if (!c.is_zero() && prec.admits(m.total_degree())) {
            out.emplace_back(m, std::move(c));
        }
    };
    while (ia != ea || ib != eb) {
        if (ib == eb || (ia != ea && less(ia->first, ib->first))) {
            push(ia->first, ia->second);
            ++ia;
        } else if (ia == ea || less(ib->first, ia->first)) {
            push(ib->first, op(Scalar::zero(a.field()), ib->second));
            ++ib;
        } else {
            push(ia->first, op(ia->second, ib->second));
            ++ia;
            ++ib;
        }
    }
    return Series(a.field(), a.nvars(), prec, std::move(out));
}

} // namespace

Series &Series::operator+=(const Series &o)
{
    *this = merge(*this, o, [](const Scalar &x, const Scalar &y) { return x + y; });
    return *this;
}

Series &Series::operator-=(const Series &o)
{
    *this = merge(*this, o, [](const Scalar &x, const Scalar &y) { return x - y; });
    return *this;
}

Series &Series::operator*=(const Scalar &c)
{
    if (!(c.field() == field_)) {
        throw IncompatibleAmbient("scalar field differs from series field");
    }
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &t : terms_) {
        t.second *= c;
    }
    return *this;
}

Series operator*(const Series &a, const Series &b)
{
    a.check_compatible(b);
    const auto prec = min(a.precision(), b.precision());
    std::vector<Series::term_type> out;
    out.reserve(a.size() * b.size());
    for (const auto &[ma, ca] : a.terms()) {
        const auto da = ma.total_degree();
        for (const auto &[mb, cb] : b.terms()) {
            // terms are graded: once the degree overflows, the rest do too
            if (!prec.admits(da + mb.total_degree())) {
                break;
            }
            out.emplace_back(ma + mb, ca * cb);
        }
    }
    return Series(a.field(), a.nvars(), prec, std::move(out));
}

Series &Series::operator*=(const Series &o)
{
    *this = *this * o;
    return *this;
}

bool agrees(const Series &a, const Series &b)
{
    a.check_compatible(b);
    const auto prec = min(a.precision(), b.precision());
    return a.truncated(prec).terms() == b.truncated(prec).terms();
}

std::string Series::to_string() const
{
    std::ostringstream os;
    if (terms_.empty()) {
        os << "0";
    }
    bool first = true;
    for (const auto &[m, coeff] : terms_) {
        auto c = coeff;
        const bool negative = field_.is_rationals() && sgn(c.rational()) < 0;
        if (negative) {
            c = -c;
        }
        if (first) {
            os << (negative ? "-" : "");
        } else {
            os << (negative ? " - " : " + ");
        }
        first = false;
        const bool unit_mono = m.is_zero();
        if (!c.is_one() || unit_mono) {
            os << c.to_string();
        }
        bool need_star = !c.is_one() && !unit_mono;
        for (std::size_t j = 0; j < m.size(); ++j) {
            if (m[j] == 0) {
                continue;
            }
            if (need_star) {
                os << "*";
            }
            os << "X" << (j + 1);
            if (m[j] > 1) {
                os << "^" << m[j];
            }
            need_star = true;
        }
    }
    if (!prec_.is_exact()) {
        os << " + O(" << prec_.order() << ")";
    }
    return os.str();
}

Series series_mul(const Series &a, const Series &b)
{
    return a * b;
}

Series series_pow(const Series &a, std::uint64_t e)
{
    Series r = Series::one(a.field(), a.nvars(), a.precision());
    Series base = a;
    while (e) {
        if (e & 1u) {
            r *= base;
        }
        e >>= 1;
        if (e) {
            base *= base;
        }
    }
    return r;
}

Series series_inverse(const Series &a, std::uint64_t target_precision)
{
    const auto c0 = a.constant_term();
    if (c0.is_zero()) {
        throw NotAUnit("series with zero constant term is not invertible: " + a.to_string());
    }
    const auto prec = Precision::finite(target_precision);
    if (a.precision() < prec) {
        throw PrecisionExhausted("cannot invert to order " + std::to_string(target_precision)
                                 + " a series known only to order " + a.precision().to_string());
    }
    const auto c0inv = scalar_inv(c0);
    // a = c0 (1 - u) with u in (X); a^{-1} = c0^{-1} sum_k u^k, u^k in (X)^k.
    const auto one = Series::one(a.field(), a.nvars(), prec);
    const auto u = one - a.truncated(prec) * c0inv;
    Series sum = one;
    Series power = one;
    for (std::uint64_t k = 1; k < target_precision; ++k) {
        power *= u;
        if (power.is_zero()) {
            break;
        }
        sum += power;
    }
    return sum * c0inv;
}

TSeries::TSeries(std::vector<Series> coeffs) : coeffs_(std::move(coeffs))
{
    if (coeffs_.empty()) {
        throw InvalidInput("TSeries needs at least the t^0 coefficient");
    }
    for (const auto &c : coeffs_) {
        coeffs_.front().check_compatible(c);
    }
}

TSeries::TSeries(const FieldSpec &field, std::size_t nvars, std::size_t tlen, Precision prec)
    : coeffs_(tlen + 1, Series(field, nvars, prec))
{
}

TSeries TSeries::constant(const Series &s, std::size_t tlen)
{
    std::vector<Series> c(tlen + 1, Series(s.field(), s.nvars(), s.precision()));
    c[0] = s;
    return TSeries(std::move(c));
}

Precision TSeries::precision() const
{
    Precision p;
    for (const auto &c : coeffs_) {
        p = min(p, c.precision());
    }
    return p;
}

void TSeries::check_compatible(const TSeries &o) const
{
    if (tlen() != o.tlen()) {
        throw IncompatibleAmbient("TSeries t-length mismatch: " + std::to_string(tlen()) + " vs "
                                  + std::to_string(o.tlen()));
    }
    coeffs_.front().check_compatible(o.coeffs_.front());
}

TSeries &TSeries::operator+=(const TSeries &o)
{
    check_compatible(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] += o.coeffs_[i];
    }
    return *this;
}

TSeries &TSeries::operator*=(const Series &c)
{
    for (auto &x : coeffs_) {
        x *= c;
    }
    return *this;
}

TSeries operator*(const TSeries &a, const TSeries &b)
{
    a.check_compatible(b);
    const auto m = a.tlen();
    std::vector<Series> out;
    out.reserve(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        Precision prec;
        std::vector<Series::term_type> terms;
        for (std::size_t r = 0; r <= i; ++r) {
            prec = min(prec, min(a[r].precision(), b[i - r].precision()));
        }
        for (std::size_t r = 0; r <= i; ++r) {
            if (a[r].is_zero() || b[i - r].is_zero()) {
                continue;
            }
            auto prod = a[r] * b[i - r];
            for (auto &t : prod.terms()) {
                terms.push_back(t);
            }
        }
        out.emplace_back(a.field(), a.nvars(), prec, std::move(terms));
    }
    return TSeries(std::move(out));
}

TSeries TSeries::shifted(std::size_t s) const
{
    TSeries r(field(), nvars(), tlen(), precision());
    for (std::size_t i = 0; i + s <= tlen(); ++i) {
        r.coeffs_[i + s] = coeffs_[i];
    }
    return r;
}

Substitution::Substitution(std::vector<TSeries> images) : images_(std::move(images))
{
    if (images_.empty()) {
        throw InvalidInput("substitution needs at least one image");
    }
    for (const auto &im : images_) {
        if (im.nvars() != images_.size()) {
            throw IncompatibleAmbient("substitution image lives in " + std::to_string(im.nvars())
                                      + " variables, expected " + std::to_string(images_.size()));
        }
        images_.front().coeffs().front().check_compatible(im[0]);
        if (im.tlen() != images_.front().tlen()) {
            throw IncompatibleAmbient("substitution images have different t-lengths");
        }
    }
}

const TSeries &Substitution::monomial_image(const MultiIndex &beta)
{
    if (auto it = cache_.find(beta); it != cache_.end()) {
        return it->second;
    }
    const auto n = nvars();
    if (beta.size() != n) {
        throw IncompatibleAmbient("monomial " + beta.to_string() + " has wrong variable count");
    }
    if (beta.is_zero()) {
        const auto &f = images_.front()[0];
        return cache_.emplace(beta, TSeries::constant(Series::one(f.field(), n), tlen())).first->second;
    }
    std::size_t j = n;
    while (beta[j - 1] == 0) {
        --j;
    }
    --j;
    const auto &prev = monomial_image(beta - MultiIndex::unit(n, j));
    auto img = prev * images_[j];
    return cache_.emplace(beta, std::move(img)).first->second;
}

TSeries Substitution::operator()(const Series &f)
{
    if (f.nvars() != nvars()) {
        throw IncompatibleAmbient("substitute: series has " + std::to_string(f.nvars()) + " variables, "
                                  + std::to_string(nvars()) + " images given");
    }
    f.check_compatible(images_.front()[0]);
    const auto m = tlen();
    std::vector<std::vector<Series::term_type>> acc(m + 1);
    std::vector<Precision> prec(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        prec[i] = f.precision().lowered(i);
    }
    for (const auto &[beta, c] : f.terms()) {
        const auto &img = monomial_image(beta);
        for (std::size_t i = 0; i <= m; ++i) {
            prec[i] = min(prec[i], img[i].precision());
            for (const auto &[mono, d] : img[i].terms()) {
                acc[i].emplace_back(mono, c * d);
            }
        }
    }
    std::vector<Series> out;
    out.reserve(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        out.emplace_back(f.field(), f.nvars(), prec[i], std::move(acc[i]));
    }
    return TSeries(std::move(out));
}

Series Substitution::coefficient(const Series &f, std::size_t i)
{
    if (i > tlen()) {
        throw ComponentOutOfRange("t-degree " + std::to_string(i) + " exceeds length " + std::to_string(tlen()));
    }
    if (f.nvars() != nvars()) {
        throw IncompatibleAmbient("substitute: series has " + std::to_string(f.nvars()) + " variables, "
                                  + std::to_string(nvars()) + " images given");
    }
    f.check_compatible(images_.front()[0]);
    auto prec = f.precision().lowered(i);
    std::vector<Series::term_type> acc;
    for (const auto &[beta, c] : f.terms()) {
        const auto &img = monomial_image(beta)[i];
        prec = min(prec, img.precision());
        for (const auto &[mono, d] : img.terms()) {
            acc.emplace_back(mono, c * d);
        }
    }
    return Series(f.field(), f.nvars(), prec, std::move(acc));
}

TSeries substitute(const Series &f, const std::vector<TSeries> &images)
{
    Substitution s(images);
    return s(f);
}

Series random_polynomial(const FieldSpec &field, std::size_t nvars, std::uint32_t max_degree, std::size_t max_terms,
                         std::mt19937_64 &rng, long coeff_bound)
{
    std::uniform_int_distribution<std::size_t> nterms(0, max_terms);
    std::uniform_int_distribution<std::uint32_t> expo(0, max_degree);
    std::uniform_int_distribution<long> coeff(-coeff_bound, coeff_bound);
    std::vector<Series::term_type> terms;
    const auto k = nterms(rng);
    for (std::size_t t = 0; t < k; ++t) {
        MultiIndex m(nvars);
        std::uint32_t budget = expo(rng);
        // spread a random total degree over the variables
        for (std::uint32_t u = 0; u < budget; ++u) {
            ++m[std::uniform_int_distribution<std::size_t>(0, nvars - 1)(rng)];
        }
        terms.emplace_back(std::move(m), Scalar(field, coeff(rng)));
    }
    return Series(field, nvars, Precision::exact(), std::move(terms));
}

} // namespace hsd
