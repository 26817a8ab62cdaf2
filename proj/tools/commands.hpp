#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qsusy/params.hpp"

namespace qsusy::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsage = 2, kInternal = 3 };

enum class OutputFormat { Json, Csv, Pretty };

struct RunConfig {
  std::optional<DeformationParams> params;
  long n_max = 30;
  long buffer = 4;
  double tol = 1e-10;
  OutputFormat output = OutputFormat::Json;
  std::uint64_t seed = 42;
};

/// Parses argv-style arguments (without the program name), dispatches the
/// subcommand and returns the process exit code. Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct QGrid {
  double start = 0.0;
  double stop = 0.0;
  long steps = 0;

  double at(long i) const;
};

/// "start:stop:steps". Throws std::invalid_argument when malformed.
QGrid parse_grid(const std::string& text);

}  // namespace qsusy::cli
