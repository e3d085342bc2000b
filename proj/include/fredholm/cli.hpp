#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fredholm {

enum class OutputFormat { Json, Text };

struct CliConfig {
  std::string subcommand;  // analyze | solve | verify
  std::string input_path;
  std::optional<std::string> output_path;
  int grid_size = 1024;
  std::optional<double> rank_tolerance;
  std::optional<double> consistency_tolerance;
  OutputFormat format = OutputFormat::Json;
  bool norms = false;
  bool samples = false;
  bool corpus = false;
};

/// Exit codes: 0 success (including an inconsistent problem), 1 an oracle
/// failed in verify, 2 invalid input or configuration, 3 numerical failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_analyze(const CliConfig& config, std::ostream& out, std::ostream& err);
int run_solve(const CliConfig& config, std::ostream& out, std::ostream& err);
int run_verify(const CliConfig& config, std::ostream& out, std::ostream& err);

}  // namespace fredholm
