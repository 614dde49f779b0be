#pragma once

#include <string>

#include "nagplan_cli/config.hpp"

namespace nagplan::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 2,
  kExitPartial = 3,
  kExitUnreachable = 4,
};

struct RunOutput {
  int exit_code = kExitOk;
  std::string result_json;
  std::string render;            // empty when rendering is off
  std::string render_extension;  // "svg" or "json"
  std::string message;           // diagnostic for stderr
};

/// Executes one query. Never throws for bad input; errors map to exit codes.
RunOutput run(const PlanConfig& config);

/// Writes result and render files into `out_dir` (created if missing).
void write_outputs(const RunOutput& out, const PlanConfig& config, const std::string& out_dir);

}  // namespace nagplan::cli
