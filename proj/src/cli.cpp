#include <hsd/cli.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include <hsd/coefffield.hpp>
#include <hsd/decompose.hpp>
#include <hsd/error.hpp>

namespace hsd::cli
{

namespace
{

using io::json;

// File-level failures: unreadable input, malformed JSON, unwritable output.
class FileError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

io::ProblemFile load_problem(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw FileError("cannot open problem file '" + path + "'");
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error &e) {
        throw FileError("malformed JSON in '" + path + "': " + e.what());
    }
    return io::problem_from_json(j);
}

void emit(const json &report, const std::string &out_path, std::ostream &out)
{
    const auto text = report.dump(2) + "\n";
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) {
        throw FileError("cannot write '" + out_path + "'");
    }
    f << text;
}

int cmd_decompose(const std::string &input, const std::string &out_path, std::uint32_t max_degree, std::ostream &out)
{
    const auto report = decompose_report(load_problem(input), max_degree);
    emit(report, out_path, out);
    return report["witness"].is_null() ? ok : verification_failed;
}

int cmd_kernel(const std::string &input, const std::string &out_path, bool degree1_only, std::ostream &out)
{
    emit(kernel_report(load_problem(input), degree1_only), out_path, out);
    return ok;
}

int cmd_verify(const std::string &input, const std::string &out_path, std::optional<std::uint64_t> seed,
               std::uint32_t max_degree, std::ostream &out)
{
    const auto report = verify_report(load_problem(input), seed, max_degree);
    for (const auto &[name, r] : report["leibniz"].items()) {
        out << "leibniz " << name << ": " << (r["passed"].get<bool>() ? "pass" : "FAIL") << " (seed "
            << r["seed"].get<std::uint64_t>() << ", " << r["pairs_checked"].get<std::size_t>() << " pairs)\n";
    }
    if (const auto &d = report["decomposition"]; !d.is_null()) {
        out << "decomposition: " << (d["passed"].get<bool>() ? "pass" : "FAIL") << " (verified to degree "
            << d["verified_to_degree"].get<int>() << " of " << max_degree << ")";
        if (const auto &w = d["witness"]; !w.is_null()) {
            out << " witness i=" << w["i"].get<std::size_t>() << " beta=" << w["beta"].dump()
                << " lhs=" << w["lhs"].dump() << " rhs=" << w["rhs"].dump();
        }
        out << "\n";
    }
    const bool passed = report["passed"].get<bool>();
    out << (passed ? "verify: pass" : "verify: FAIL") << " (seed " << report["seed"].get<std::uint64_t>() << ")\n";
    if (!out_path.empty()) {
        emit(report, out_path, out);
    }
    return passed ? ok : verification_failed;
}

int cmd_demo(const std::string &out_dir, std::ostream &out)
{
    const auto worked = demo_worked_problem();
    const auto char2 = demo_char2_problem();
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        emit(io::to_json(worked), (std::filesystem::path(out_dir) / "worked.json").string(), out);
        emit(io::to_json(char2), (std::filesystem::path(out_dir) / "char2.json").string(), out);
    }

    const auto ds = worked.family();
    const auto result = decompose(*worked.target, ds, worked.length + 5, 4, worked.names());
    const auto &field = worked.field;
    const auto x2 = Series::monomial(field, MultiIndex{2}, Scalar::one(field));
    json w = io::to_json(result);
    w["D2_X2_direct"] = io::to_json(apply_component(*worked.target, 2, x2));
    w["D2_X2_formula"] = io::to_json(formula_grande(result.c, ds, 2, x2));

    const auto full = coefficient_field(char2.family(), *char2.truncation);
    const auto first = coefficient_field(char2.family(), *char2.truncation, 1);
    json report = {{"worked", std::move(w)},
                   {"char2", {{"full", io::to_json(full)}, {"degree1_only", io::to_json(first)}}}};
    out << report.dump(2) << "\n";
    return ok;
}

} // namespace

io::json decompose_report(const io::ProblemFile &p, std::uint32_t max_degree)
{
    if (!p.target) {
        throw InvalidInput("decompose needs a \"target\" HS derivation");
    }
    if (p.derivations.size() != p.nvars) {
        throw InvalidInput("decompose needs exactly nvars = " + std::to_string(p.nvars) + " derivations, got "
                           + std::to_string(p.derivations.size()));
    }
    const auto precision = p.truncation.value_or(p.length + max_degree + 1);
    return io::to_json(decompose(*p.target, p.family(), precision, max_degree, p.names()));
}

io::json kernel_report(const io::ProblemFile &p, bool degree1_only)
{
    if (!p.truncation) {
        throw InvalidInput("kernel needs a \"truncation\" order N");
    }
    const auto report =
        coefficient_field(p.family(), *p.truncation, degree1_only ? std::optional<std::size_t>(1) : std::nullopt);
    auto j = io::to_json(report);
    j["degree1_only"] = degree1_only;
    return j;
}

io::json verify_report(const io::ProblemFile &p, std::optional<std::uint64_t> seed, std::uint32_t max_degree)
{
    if (p.table && !p.target) {
        throw InvalidInput("a coefficient table \"C\" was supplied without a \"target\"");
    }
    LeibnizOptions opts;
    opts.seed = seed.value_or(p.seed);
    bool passed = true;
    json report = {{"seed", opts.seed}};
    json leibniz = json::object();
    auto check = [&](const std::string &name, const HSDerivation &d) {
        const auto r = leibniz_check(d, opts);
        passed = passed && r.passed;
        leibniz[name] = io::to_json(r);
    };
    for (const auto &d : p.derivations) {
        check(d.name, d.hsd);
    }
    if (p.target) {
        check("target", *p.target);
    }
    report["leibniz"] = std::move(leibniz);
    if (p.table) {
        const auto r = verify_decomposition(*p.target, p.family(), *p.table, max_degree);
        passed = passed && r.passed;
        json dj = {{"passed", r.passed}, {"verified_to_degree", r.verified_to_degree}};
        dj["witness"] = r.witness ? io::to_json(*r.witness) : json(nullptr);
        report["decomposition"] = std::move(dj);
    } else {
        report["decomposition"] = nullptr;
    }
    report["passed"] = passed;
    return report;
}

io::ProblemFile demo_worked_problem()
{
    const auto q = FieldSpec::rationals();
    io::ProblemFile p;
    p.field = q;
    p.nvars = 1;
    p.length = 2;
    p.seed = 1;
    p.derivations.push_back({"Delta1", taylor_hsd(0, 2, 1, q)});
    // E(X) = X + X t + t^2
    p.target = HSDerivation::from_components(q, 1, {{Series::variable(q, 1, 0)}, {Series::one(q, 1)}});
    return p;
}

io::ProblemFile demo_char2_problem()
{
    const auto f2 = FieldSpec::prime(2);
    io::ProblemFile p;
    p.field = f2;
    p.nvars = 1;
    p.length = 4;
    p.truncation = 5;
    p.seed = 1;
    p.derivations.push_back({"Delta1", taylor_hsd(0, 4, 1, f2)});
    return p;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Hasse-Schmidt derivations over QQ and GF(p): decomposition, verification, coefficient fields",
                 "hsd"};
    app.require_subcommand(1);

    std::string input, out_path;
    std::uint32_t max_degree = 4;
    std::optional<std::uint64_t> seed;
    bool degree1_only = false;

    auto *dec = app.add_subcommand("decompose", "express the target through the family (writes the C table)");
    dec->add_option("input", input, "problem file (JSON)")->required();
    dec->add_option("--out", out_path, "write the report here instead of stdout");
    dec->add_option("--max-degree", max_degree, "verify on monomials up to this total degree");

    auto *ker = app.add_subcommand("kernel", "joint kernel of all components on k[X]/(X)^N");
    ker->add_option("input", input, "problem file (JSON)")->required();
    ker->add_option("--out", out_path, "write the report here instead of stdout");
    ker->add_flag("--degree1-only", degree1_only, "use only the degree-1 components");

    auto *ver = app.add_subcommand("verify", "Leibniz checks and, if a C table is given, the decomposition identity");
    ver->add_option("input", input, "problem file (JSON)")->required();
    ver->add_option("--out", out_path, "also write a JSON report here");
    ver->add_option("--seed", seed, "seed for the random Leibniz pairs (default: the file's seed)");
    ver->add_option("--max-degree", max_degree, "verify on monomials up to this total degree");

    auto *demo = app.add_subcommand("demo", "run the shipped worked examples");
    demo->add_option("--out", out_path, "directory to write the example problem files into");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError &e) {
        const auto code = app.exit(e, out, err);
        return code == 0 ? ok : usage_or_io;
    }

    try {
        if (dec->parsed()) {
            return cmd_decompose(input, out_path, max_degree, out);
        }
        if (ker->parsed()) {
            return cmd_kernel(input, out_path, degree1_only, out);
        }
        if (ver->parsed()) {
            return cmd_verify(input, out_path, seed, max_degree, out);
        }
        return cmd_demo(out_path, out);
    } catch (const NotABasis &e) {
        err << "hsd: not a basis: " << e.what() << "\n";
        return not_a_basis;
    } catch (const std::exception &e) {
        err << "hsd: " << e.what() << "\n";
        return usage_or_io;
    }
}

} // namespace hsd::cli
