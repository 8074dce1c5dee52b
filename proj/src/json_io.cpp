#include <hsd/json_io.hpp>

#include <limits>

#include <hsd/error.hpp>

namespace hsd::io
{

namespace
{

[[noreturn]] void bad(const std::string &what)
{
    throw InvalidInput(what);
}

const json &member(const json &j, const char *key, const char *context)
{
    if (!j.is_object() || !j.contains(key)) {
        bad(std::string(context) + ": missing \"" + key + "\"");
    }
    return j.at(key);
}

std::uint64_t as_count(const json &j, const char *what)
{
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
        bad(std::string(what) + " must be a non-negative integer");
    }
    return j.get<std::uint64_t>();
}

Scalar scalar_from_json(const json &j, const FieldSpec &field)
{
    if (j.is_string()) {
        return Scalar::parse(field, j.get<std::string>());
    }
    if (j.is_number_integer()) {
        return Scalar(field, static_cast<long>(j.get<std::int64_t>()));
    }
    bad("coefficient must be a string or an integer, got " + j.dump());
}

} // namespace

json to_json(const Series &s)
{
    json terms = json::array();
    for (const auto &[beta, c] : s.terms()) {
        json t = json::array();
        for (auto e : beta) {
            t.push_back(e);
        }
        t.push_back(c.to_string());
        terms.push_back(std::move(t));
    }
    json out;
    if (s.is_exact()) {
        out["prec"] = "exact";
    } else {
        out["prec"] = s.precision().order();
    }
    out["terms"] = std::move(terms);
    return out;
}

Series series_from_json(const json &j, const FieldSpec &field, std::size_t nvars)
{
    Precision prec;
    if (j.is_object() && j.contains("prec")) {
        const auto &p = j.at("prec");
        if (p.is_string()) {
            if (p.get<std::string>() != "exact") {
                bad("series precision must be an integer or \"exact\"");
            }
        } else {
            prec = Precision::finite(as_count(p, "series precision"));
        }
    }
    const auto &terms = member(j, "terms", "series");
    if (!terms.is_array()) {
        bad("series terms must be an array");
    }
    std::vector<Series::term_type> out;
    for (const auto &t : terms) {
        if (!t.is_array() || t.size() != nvars + 1) {
            bad("series term " + t.dump() + " must list " + std::to_string(nvars) + " exponents and a coefficient");
        }
        MultiIndex beta(nvars);
        for (std::size_t i = 0; i < nvars; ++i) {
            const auto e = as_count(t[i], "exponent");
            if (e > std::numeric_limits<MultiIndex::value_type>::max()) {
                bad("exponent too large");
            }
            beta[i] = static_cast<MultiIndex::value_type>(e);
        }
        out.emplace_back(std::move(beta), scalar_from_json(t[nvars], field));
    }
    return Series(field, nvars, prec, std::move(out));
}

json to_json(const TSeries &t)
{
    json out = json::array();
    for (const auto &c : t.coeffs()) {
        out.push_back(to_json(c));
    }
    return out;
}

TSeries tseries_from_json(const json &j, const FieldSpec &field, std::size_t nvars)
{
    if (!j.is_array() || j.empty()) {
        bad("t-series must be a non-empty array of series");
    }
    std::vector<Series> coeffs;
    for (const auto &s : j) {
        coeffs.push_back(series_from_json(s, field, nvars));
    }
    return TSeries(std::move(coeffs));
}

json to_json(const HSDerivation &d)
{
    json images = json::array();
    for (const auto &im : d.images()) {
        images.push_back(to_json(im));
    }
    return {{"nvars", d.nvars()}, {"length", d.length()}, {"images", std::move(images)}};
}

HSDerivation hsd_from_json(const json &j, const FieldSpec &field, std::optional<std::size_t> nvars,
                           std::optional<std::size_t> length)
{
    if (!j.is_object()) {
        bad("HS derivation must be a JSON object");
    }
    if (j.contains("nvars")) {
        const auto n = as_count(j.at("nvars"), "nvars");
        if (nvars && *nvars != n) {
            bad("HS derivation declares " + std::to_string(n) + " variables, expected " + std::to_string(*nvars));
        }
        nvars = n;
    }
    if (j.contains("length")) {
        const auto m = as_count(j.at("length"), "length");
        if (length && *length != m) {
            bad("HS derivation declares length " + std::to_string(m) + ", expected " + std::to_string(*length));
        }
        length = m;
    }
    if (!nvars || !length) {
        bad("HS derivation needs \"nvars\" and \"length\"");
    }
    if (j.contains("taylor")) {
        const auto dir = as_count(j.at("taylor"), "taylor direction");
        if (dir < 1 || dir > *nvars) {
            bad("taylor direction out of range");
        }
        return taylor_hsd(dir - 1, *length, *nvars, field);
    }
    const auto &images = member(j, "images", "HS derivation");
    if (!images.is_array() || images.size() != *nvars) {
        bad("HS derivation needs one image per variable");
    }
    std::vector<TSeries> out;
    for (const auto &im : images) {
        auto t = tseries_from_json(im, field, *nvars);
        if (t.tlen() != *length) {
            bad("HS derivation image has " + std::to_string(t.tlen() + 1) + " t-coefficients, expected "
                + std::to_string(*length + 1));
        }
        out.push_back(std::move(t));
    }
    return HSDerivation(std::move(out));
}

json to_json(const CoeffTable &c)
{
    json rows = json::array();
    for (std::size_t l = 1; l <= c.levels(); ++l) {
        json row = json::array();
        for (std::size_t d = 0; d < c.slots(); ++d) {
            row.push_back(to_json(c.at(l, d)));
        }
        rows.push_back(std::move(row));
    }
    return {{"m", c.levels()}, {"n", c.slots()}, {"C", std::move(rows)}};
}

CoeffTable coeff_table_from_json(const json &j, const FieldSpec &field, std::size_t nvars)
{
    const auto m = as_count(member(j, "m", "coefficient table"), "m");
    const auto n = as_count(member(j, "n", "coefficient table"), "n");
    const auto &rows = member(j, "C", "coefficient table");
    if (!rows.is_array() || rows.size() != m) {
        bad("coefficient table needs m rows");
    }
    CoeffTable out(field, nvars, m, n);
    for (std::size_t l = 0; l < m; ++l) {
        if (!rows[l].is_array() || rows[l].size() != n) {
            bad("coefficient table row " + std::to_string(l + 1) + " needs n entries");
        }
        for (std::size_t d = 0; d < n; ++d) {
            out.at(l + 1, d) = series_from_json(rows[l][d], field, nvars);
        }
    }
    return out;
}

json to_json(const KernelReport &r)
{
    json basis = json::array();
    for (const auto &b : r.basis) {
        basis.push_back(to_json(b));
    }
    return {{"N", r.order}, {"dimension", r.dimension}, {"basis", std::move(basis)}, {"operators", r.operators_used}};
}

json to_json(const DecompositionWitness &w)
{
    return {{"i", w.component}, {"beta", w.beta.to_vector()}, {"lhs", to_json(w.lhs)}, {"rhs", to_json(w.rhs)}};
}

json to_json(const LeibnizReport &r)
{
    json out = {{"passed", r.passed}, {"seed", r.seed}, {"pairs_checked", r.pairs_checked}};
    if (r.witness) {
        out["witness"] = {{"i", r.witness->component},
                          {"f", to_json(r.witness->f)},
                          {"g", to_json(r.witness->g)},
                          {"lhs", to_json(r.witness->lhs)},
                          {"rhs", to_json(r.witness->rhs)}};
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

json to_json(const DecompositionResult &r)
{
    json out = {{"C", to_json(r.c)}, {"verified_to_degree", r.verified_to_degree}, {"basis_order", r.basis_order}};
    out["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
    return out;
}

std::vector<HSDerivation> ProblemFile::family() const
{
    std::vector<HSDerivation> out;
    for (const auto &d : derivations) {
        out.push_back(d.hsd);
    }
    return out;
}

std::vector<std::string> ProblemFile::names() const
{
    std::vector<std::string> out;
    for (const auto &d : derivations) {
        out.push_back(d.name);
    }
    return out;
}

ProblemFile problem_from_json(const json &j)
{
    if (!j.is_object()) {
        bad("problem file must be a JSON object");
    }
    ProblemFile p;
    const auto &field = member(j, "field", "problem");
    if (!field.is_string()) {
        bad("\"field\" must be a string such as \"QQ\" or \"GF(2)\"");
    }
    p.field = FieldSpec::parse(field.get<std::string>());
    p.nvars = as_count(member(j, "nvars", "problem"), "nvars");
    p.length = as_count(member(j, "length", "problem"), "length");
    if (p.nvars == 0 || p.length == 0) {
        bad("nvars and length must be positive");
    }
    if (j.contains("seed")) {
        p.seed = as_count(j.at("seed"), "seed");
    }
    if (j.contains("truncation")) {
        p.truncation = as_count(j.at("truncation"), "truncation");
    }
    const auto &ders = member(j, "derivations", "problem");
    if (!ders.is_array()) {
        bad("\"derivations\" must be an array");
    }
    for (std::size_t k = 0; k < ders.size(); ++k) {
        const auto &d = ders[k];
        std::string name = "D" + std::to_string(k + 1);
        if (d.is_object() && d.contains("name")) {
            if (!d.at("name").is_string()) {
                bad("derivation name must be a string");
            }
            name = d.at("name").get<std::string>();
        }
        p.derivations.push_back({std::move(name), hsd_from_json(d, p.field, p.nvars, p.length)});
    }
    if (j.contains("target") && !j.at("target").is_null()) {
        p.target = hsd_from_json(j.at("target"), p.field, p.nvars, p.length);
    }
    if (j.contains("C") && !j.at("C").is_null()) {
        p.table = coeff_table_from_json(j.at("C"), p.field, p.nvars);
    }
    return p;
}

json to_json(const ProblemFile &p)
{
    json out = {{"field", p.field.to_string()}, {"nvars", p.nvars}, {"length", p.length}, {"seed", p.seed}};
    if (p.truncation) {
        out["truncation"] = *p.truncation;
    }
    json ders = json::array();
    for (const auto &d : p.derivations) {
        auto dj = to_json(d.hsd);
        dj["name"] = d.name;
        ders.push_back(std::move(dj));
    }
    out["derivations"] = std::move(ders);
    if (p.target) {
        out["target"] = to_json(*p.target);
    }
    if (p.table) {
        out["C"] = to_json(*p.table);
    }
    return out;
}

} // namespace hsd::io
