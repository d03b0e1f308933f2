#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace apolar::cli {

/// What a subcommand produced; printed as one result line plus an optional
/// report.
struct RunReport {
  std::string result;  // "yes", "no", an exact scalar, or a value list
  std::string engine;
  std::size_t basis_dim = 0;
  std::size_t gates = 0;
  std::int64_t micros = 0;
  std::string mode;
  std::vector<std::pair<std::string, std::string>> extra;
};

/// Runs one subcommand. `args` excludes the program name. Exit code 0 for
/// yes/success, 1 for no, 2 for usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace apolar::cli
