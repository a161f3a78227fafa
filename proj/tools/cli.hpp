#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zeck::cli {

// Runs one zeckgame invocation. args excludes the program name. Summaries go
// to out, diagnostics to err; machine-readable files only via --out.
// Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace zeck::cli
