#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qbst/parallel.hpp"

namespace qbst {

enum class Command { solve_bcr, decompose, sample, oracle_check, full_pipeline };

/// Throws Error(InvalidArgument) for unknown names.
Command parse_command(std::string_view name);
std::string_view command_name(Command command);

inline constexpr int kMaxOracleLimit = 12;

struct RunConfig {
  Command command = Command::full_pipeline;
  std::string input_path;
  /// STP text used instead of reading input_path (tests, stdin).
  std::optional<std::string> input_text;
  std::uint64_t seed = 1;
  int trials = 100;
  int oracle_limit = 8;  // max terminals for exhaustive checks, <= 12
  bool trace = false;
  bool json = false;
  Execution execution = Execution::parallel;
};

struct RunOutcome {
  int exit_code = 0;  // 0 ok, 1 solver/input error, 2 invariant breach
  std::string report;
};

/// Runs the configured pipeline and renders the report. Never throws for
/// solver errors; they are reported with machine-readable codes.
RunOutcome run(const RunConfig& config);

}  // namespace qbst
