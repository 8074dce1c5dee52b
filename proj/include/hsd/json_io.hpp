#ifndef HSD_JSON_IO_HPP
#define HSD_JSON_IO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <hsd/coefffield.hpp>
#include <hsd/decompose.hpp>
#include <hsd/formula.hpp>
#include <hsd/hsderiv.hpp>
#include <hsd/series.hpp>

namespace hsd::io
{

using nlohmann::json;

// Series: {"prec": N | "exact", "terms": [[e_1, ..., e_n, "coeff"], ...]}.
// Coefficients are written as strings; integers are also accepted on input.
json to_json(const Series &s);
Series series_from_json(const json &j, const FieldSpec &field, std::size_t nvars);

// TSeries: array of Series indexed by t-degree.
json to_json(const TSeries &t);
TSeries tseries_from_json(const json &j, const FieldSpec &field, std::size_t nvars);

// HSDerivation: {"nvars": n, "length": m, "images": [TSeries, ...]}; the t^0
// entries must be the variables. A member may instead be written
// {"taylor": j} (1-based direction), expanded with the given nvars/length.
json to_json(const HSDerivation &d);
HSDerivation hsd_from_json(const json &j, const FieldSpec &field, std::optional<std::size_t> nvars = std::nullopt,
                           std::optional<std::size_t> length = std::nullopt);

// CoeffTable: {"m": m, "n": n, "C": [[Series, ...], ...]} indexed [l-1][d-1].
json to_json(const CoeffTable &c);
CoeffTable coeff_table_from_json(const json &j, const FieldSpec &field, std::size_t nvars);

// KernelReport: {"N": N, "dimension": d, "basis": [Series, ...], "operators": "..."}.
json to_json(const KernelReport &r);

json to_json(const DecompositionWitness &w);
json to_json(const LeibnizReport &r);
// {"C": ..., "verified_to_degree": d, "witness": null | {...}, "basis_order": [...]}
json to_json(const DecompositionResult &r);

struct NamedDerivation {
    std::string name;
    HSDerivation hsd;
};

struct ProblemFile {
    FieldSpec field;
    std::size_t nvars = 0;
    std::size_t length = 0;
    std::vector<NamedDerivation> derivations;
    std::optional<HSDerivation> target;
    std::optional<CoeffTable> table;
    std::optional<std::uint64_t> truncation;
    std::uint64_t seed = 0;

    std::vector<HSDerivation> family() const;
    std::vector<std::string> names() const;
};

// Validates every embedded object; throws InvalidInput on failure.
ProblemFile problem_from_json(const json &j);
json to_json(const ProblemFile &p);

} // namespace hsd::io

#endif
