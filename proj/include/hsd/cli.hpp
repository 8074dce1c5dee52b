#ifndef HSD_CLI_HPP
#define HSD_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <hsd/json_io.hpp>

namespace hsd::cli
{

// Exit codes shared by every command.
enum ExitCode : int {
    ok = 0,
    usage_or_io = 1,
    not_a_basis = 2,
    verification_failed = 3,
};

// Runs the command line (args excludes the program name). Reports go to out,
// diagnostics to err.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

// Report builders shared by the commands and the Python module. They throw
// InvalidInput for problems missing what the command needs.
io::json decompose_report(const io::ProblemFile &p, std::uint32_t max_degree = 4);
io::json kernel_report(const io::ProblemFile &p, bool degree1_only = false);
// Seed defaults to the problem file's seed.
io::json verify_report(const io::ProblemFile &p, std::optional<std::uint64_t> seed = std::nullopt,
                       std::uint32_t max_degree = 4);

// The one-variable worked example: target E(X) = X + X t + t^2 over Q against
// the Taylor family, length 2.
io::ProblemFile demo_worked_problem();
// Taylor family over GF(2), one variable, truncation 5.
io::ProblemFile demo_char2_problem();

} // namespace hsd::cli

#endif
