#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace alphamix::cli {

enum ExitCode : int {
  kSuccess = 0,
  kDegenerate = 1,  // ran fine but found nothing (no wolves, every mixture filtered)
  kInputError = 2,
};

/// Runs one command line (without the program name). Messages go to `out`
/// and `err`; results go to the output directory named on the command line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace alphamix::cli
