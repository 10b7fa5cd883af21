#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dynbcast/engine.hpp"

namespace dynbcast::cli {

enum ExitCode : int {
  kSuccess = 0,
  kExpectationFailed = 1,
  kUsage = 2,
  kResourceCap = 3,
};

struct Scenario {
  std::string algorithm = "countdown";
  std::string adversary = "complete";
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::optional<std::size_t> max_rounds;  // nullopt means "auto"
  std::optional<std::string> trace_path;
};

/// Parses a JSON scenario file; unknown keys and bad types throw
/// std::invalid_argument.
Scenario load_scenario(const std::string& path);

struct RunOutcome {
  Metrics metrics;
  std::string algorithm;
  std::string adversary;
  std::uint64_t seed = 0;
  std::size_t horizon = 0;
  std::size_t audit_violations = 0;
  bool countdown = false;

  /// Stabilized with everyone informed and no audit failures.
  [[nodiscard]] bool succeeded() const;
  /// The Countdown guarantees: success, rounds within stabilization_bound(n)
  /// and peak counter within 2(n - 1).
  [[nodiscard]] bool within_countdown_bounds() const;
};

/// Executes one scenario, writing the JSONL trace when trace_path is set.
RunOutcome run_scenario(const Scenario& scenario);

/// Entry point; args exclude the program name.
int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dynbcast::cli
