#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fixfnm::cli {

enum class Command { classify, fix, intersect, oracle, eq, mihailova };

struct RunConfig {
  Command command = Command::classify;
  std::vector<std::string> inputs;  // file paths, in command order
  std::string word;                 // mihailova only
  std::optional<int> radius;        // oracle and eq
  std::vector<std::pair<std::string, std::string>> declarations;  // (hom file, basis file)
  bool json = false;
  unsigned threads = 1;
};

inline constexpr int kExitTrivial = 0;
inline constexpr int kExitNontrivial = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitUnsupported = 3;

struct RunResult {
  int exit_code = kExitTrivial;
  std::string report;  // stdout on success, the error message otherwise
};

/// Parses every input before computing. Library errors become exit codes
/// 2 (input, validation, radius) or 3 (unsupported shape, missing oracle).
RunResult run(const RunConfig& config);

}  // namespace fixfnm::cli
