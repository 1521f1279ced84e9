#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilsol/flow.hpp"
#include "nilsol/soliton.hpp"

namespace nilsol {

/// Result of one CLI command: exit code plus the report rendered both ways.
/// Exit codes: 0 success, 1 demanded verdict not met (certify --expect,
/// failed tune), 2 input error (raised as exceptions, mapped by the CLI).
struct CommandResult {
  int exit_code = 0;
  std::string text;  // human-readable
  std::string json;  // machine-readable, deterministic
};

CommandResult cmd_analyze(const std::string& path, double tol = kCertifyTol);

CommandResult cmd_certify(const std::string& path, const std::string& mode,
                          double tol = kCertifyTol,
                          std::optional<bool> expect = std::nullopt);

struct FlowCommandOptions {
  FlowConfig config;
  std::optional<std::string> csv_path;  // single input only
  double detect_tol = 1e-8;
};

CommandResult cmd_flow(const std::vector<std::string>& paths,
                       const FlowCommandOptions& options);

CommandResult cmd_catalog(const std::string& family,
                          const std::map<std::string, double>& parameters,
                          const std::optional<std::string>& out_path);

CommandResult cmd_tune(const std::string& family,
                       const std::map<std::string, double>& parameters,
                       const std::string& free_name, double lo, double hi,
                       double tol = 1e-9);

CommandResult cmd_concat(const std::string& path_a, const std::string& path_b,
                         const std::optional<std::string>& out_path);

}  // namespace nilsol
