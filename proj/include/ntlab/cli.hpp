#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "ntlab/verdict.hpp"

namespace ntlab::cli {

inline constexpr int exit_consistent = 0;
inline constexpr int exit_violation = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_indeterminate = 3;

constexpr int exit_code(Verdict v) {
    switch (v) {
        case Verdict::consistent: return exit_consistent;
        case Verdict::violation: return exit_violation;
        case Verdict::indeterminate: return exit_indeterminate;
    }
    return exit_violation;
}

/// Parses argv (argv[0] is the program name), runs the subcommand and
/// returns the process exit code. Records go to `out` unless --out is
/// given; diagnostics and usage text go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ntlab::cli
