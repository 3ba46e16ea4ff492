#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cideal::cli {

enum ExitCode : int { ok = 0, domain_error = 1, usage_error = 2, lemma_failure = 3 };

/// Runs the command line in `args` (args[0] is the program name). Reports go to
/// `out` (or the --out file), structured error records to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cideal::cli
