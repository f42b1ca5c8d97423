#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace cloneforge::cli {

inline constexpr const char* kVersion = "1.0.0";

enum ExitCode { kRan = 0, kUsage = 2, kUnknown = 3 };

struct Command {
  std::string verb;
  std::vector<std::string> inputs;
  std::optional<int> k;
  std::optional<std::string> type;
  std::optional<int> m;
  std::optional<int> arity;
  std::optional<int> nmax;
  std::size_t cap = 0;
  unsigned seed = 0;
  std::string format = "json";
  std::string out;
  int threads = 1;
  bool tables = false;
  // builtin parameters
  std::optional<int> p;
  std::optional<int> d;
  std::optional<int> index;
  std::vector<int> coefficients;
  std::string relation_file;
  std::string operation_file;
  int count = 20;  // selftest trials
};

struct Outcome {
  int exit_code = kRan;
  std::string output;  // the rendered report
};

// Default cap, or CLONEFORGE_CAP when set. Throws BadParams on a malformed
// value.
std::size_t default_cap();

// Executes a parsed command; library errors become an error report.
Outcome run(const Command& cmd);

// Parses argv-style arguments (without the program name) and runs them.
// Writes the report to `out` (or the --out file) and diagnostics to `err`.
int main_entry(const std::vector<std::string>& args, std::string& out, std::string& err);

}  // namespace cloneforge::cli
