#pragma once

// Command-line front end. Parsing and execution live here so tests can drive
// them without spawning processes.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace hardy::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNotConverged = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Command {
  std::string subcommand;  // spec, lhv-check, optimize, table, curve, equiv, npa-export
  std::string help_text;   // non-empty when --help was requested

  std::string family;       // builtin family name
  std::string spec_source;  // builtin:<name> or a JSON file
  int k = 2;
  int d = 2;
  double eps = 0.0;
  bool all = false;  // lhv-check over every family and small scenario

  int dim = 0;  // 0: use d
  int restarts = 50;
  int max_iterations = 2000;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  std::string table_id = "Ia";
  int max_k = 6;
  int max_d = 7;

  std::string kind = "mgds";
  double eps_min = 0.01;
  double eps_max = 0.49;
  int steps = 49;

  std::string level = "1+AB";
  std::string out;  // empty: stdout
};

/// Default worker count: HARDY_THREADS if set, else hardware concurrency.
unsigned default_threads();

/// Throws UsageError on unknown subcommands or flags, missing values and
/// malformed numbers. A --help request returns a Command whose help_text is
/// filled and whose subcommand names the topic.
Command parse_args(const std::vector<std::string>& args);

/// Runs the command; returns 0, 1 (error) or 2 (some result failed to
/// converge). Errors are reported on `err`.
int execute(const Command& cmd, std::ostream& out, std::ostream& err);

/// parse_args + execute with usage errors mapped to exit code 1.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hardy::cli
