#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <hsd/cli.hpp>
#include <hsd/error.hpp>

namespace py = pybind11;
using hsd::io::json;

namespace
{

hsd::io::ProblemFile parse_problem(const std::string &text)
{
    return hsd::io::problem_from_json(json::parse(text));
}

std::string apply_component_json(const std::string &derivation, const std::string &field, std::size_t i,
                                 const std::string &series)
{
    const auto k = hsd::FieldSpec::parse(field);
    const auto d = hsd::io::hsd_from_json(json::parse(derivation), k);
    const auto f = hsd::io::series_from_json(json::parse(series), k, d.nvars());
    return hsd::io::to_json(hsd::apply_component(d, i, f)).dump();
}

py::tuple run_cli(const std::vector<std::string> &args)
{
    std::ostringstream out, err;
    const int code = hsd::cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
}

} // namespace

PYBIND11_MODULE(_hsdkit, m)
{
    m.doc() = "JSON-level bindings of the hsd library";

    auto base = py::register_exception<hsd::Error>(m, "HSDError", PyExc_ValueError);
    py::register_exception<hsd::NotABasis>(m, "NotABasis", base.ptr());
    py::register_exception<hsd::PrecisionExhausted>(m, "PrecisionExhausted", base.ptr());
    py::register_exception<hsd::InvalidInput>(m, "InvalidInput", base.ptr());

    m.def(
        "decompose",
        [](const std::string &problem, std::uint32_t max_degree) {
            return hsd::cli::decompose_report(parse_problem(problem), max_degree).dump();
        },
        py::arg("problem"), py::arg("max_degree") = 4);
    m.def(
        "kernel",
        [](const std::string &problem, bool degree1_only) {
            return hsd::cli::kernel_report(parse_problem(problem), degree1_only).dump();
        },
        py::arg("problem"), py::arg("degree1_only") = false);
    m.def(
        "verify",
        [](const std::string &problem, std::optional<std::uint64_t> seed, std::uint32_t max_degree) {
            return hsd::cli::verify_report(parse_problem(problem), seed, max_degree).dump();
        },
        py::arg("problem"), py::arg("seed") = py::none(), py::arg("max_degree") = 4);
    m.def("apply_component", &apply_component_json, py::arg("derivation"), py::arg("field"), py::arg("i"),
          py::arg("series"));
    m.def("demo_problems", [] {
        return json{{"worked", hsd::io::to_json(hsd::cli::demo_worked_problem())},
                    {"char2", hsd::io::to_json(hsd::cli::demo_char2_problem())}}
            .dump();
    });
    m.def("binom_mod_p", &hsd::binom_mod_p, py::arg("n"), py::arg("k"), py::arg("p"));
    m.def("is_prime", &hsd::is_prime, py::arg("n"));
    m.def("run", &run_cli, py::arg("args"), "Runs the command line in-process; returns (exit_code, stdout, stderr).");
}
