#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace homeo::cli {

struct SubcommandInfo {
  std::string name;
  std::string summary;
  // Library operations the subcommand exercises.
  std::vector<std::string> operations;
};

const std::vector<SubcommandInfo>& dispatch_table();

// args excludes the program name. Exit codes: 0 success, 1 operation error
// (or a failed verification), 2 usage error (or a malformed certificate).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace homeo::cli
