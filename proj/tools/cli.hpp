#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cuntzwave::cli {

/// Runs one subcommand. args excludes the program name. The JSON report goes
/// to out (to err for eigensweep without --out, whose CSV takes out).
/// Returns 0 for a true verdict or a completed computation, 2 for a false
/// verdict, 1 for an input error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

const std::vector<std::string>& subcommands();

}  // namespace cuntzwave::cli
