#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "reveil/error.hpp"

namespace reveil::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kFormat = 2,
  kIntegrity = 3,
  kIo = 4,
};

int exit_code_for(Errc code) noexcept;

/// Runs the reveil command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace reveil::cli
