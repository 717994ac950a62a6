#pragma once

#include <string>
#include <vector>

namespace lagcfg::cli {

enum Status { Ok = 0, DomainError = 1, UsageError = 2 };

struct CommandResult {
  int status = Ok;
  std::string out;  // JSON payload when status == Ok
  std::string err;  // diagnostics; {"error": ...} JSON on domain errors
};

// args excludes the program name.
CommandResult run(const std::vector<std::string>& args);

}  // namespace lagcfg::cli
