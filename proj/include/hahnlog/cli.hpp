#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hahnlog {

/// Exit codes of the command-line front-end.
enum ExitCode : int {
    kExitOk = 0,
    kExitParse = 2,
    kExitDomain = 3,
    kExitUndecided = 4,
    kExitCatalogue = 5,
};

/// hahnlog [--context FILE] [--precision N] [--max-width W] [--seed S]
///         [--json] [--both-orders] (log EXPR | connect | integrate FILE | measure FILE)
///
/// EXPR and FILE may name a file or hold the expression text itself.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hahnlog
