#pragma once

// Command-line front end: argument parsing and command dispatch.  Kept in the
// library so it can be tested without spawning processes.

#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace equichord::cli {

enum class Command { Check, Float, Equilibrium, Billiard, Analyze, Reconstruct };

const char* to_string(Command c);

struct RunConfig {
  Command command = Command::Check;
  std::map<std::string, std::filesystem::path> bodies;  // "outer", "inner" or "body"
  std::map<std::string, double> options;
  std::optional<std::filesystem::path> output;
  long seed = 0;  // reserved; every computation is deterministic
  std::optional<std::string> help;  // set when --help was requested

  double option(const std::string& name) const;
};

enum ExitStatus : int { kPass = 0, kPropertyFailure = 1, kInputError = 2 };

struct Report {
  std::string summary;
  std::string table;  // CSV payload
  std::vector<std::string> warnings;
  int exit_status = kPass;
};

// argv without the program name.  Throws Error(UsageError) naming the bad flag.
RunConfig parse_args(const std::vector<std::string>& args);

// Runs the command and writes the CSV when an output path is set.  Module
// errors become exit status 2 with an "error: <TAG>: ..." summary.
Report run(const RunConfig& config);

// parse_args + run, printing to the given streams.  Returns the exit status.
int main_entry(const std::vector<std::string>& args, std::FILE* out, std::FILE* err);

}  // namespace equichord::cli
