#pragma once

// Task dispatch and JSON-lines reports. Every report line echoes the scenario text and
// the effective overrides, so a report file alone is enough to replay it.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "expansia/scenario.hpp"

namespace expansia {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kUsageError = 64;

const std::vector<std::string>& task_names();

struct RunOptions {
  std::optional<std::size_t> depth;
  std::optional<std::int64_t> grid;
  std::optional<std::uint64_t> seed;
  /// Adds wall-clock timing, which makes reports differ between runs.
  bool timing = false;
};

struct RunResult {
  std::vector<nlohmann::json> reports;
  int exit_code = 0;
};

/// Throws std::invalid_argument for unknown tasks and unusable parameters.
RunResult run_task(const std::string& task, const Scenario& s, const RunOptions& opts = {});

/// Exact "p/q" text, "q" included even when it is one.
std::string exact(const Rational& r);

class VersionMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ReplayOutcome {
  bool ok = true;
  /// Dotted path of the first divergent or invalid field.
  std::string field;
  std::string message;
};

/// Re-validates witnesses independently, then re-runs the echoed scenario and compares
/// every line. Throws VersionMismatch for a different major version.
ReplayOutcome replay_reports(const std::vector<nlohmann::json>& reports);

}  // namespace expansia
