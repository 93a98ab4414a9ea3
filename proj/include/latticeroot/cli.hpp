#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace latticeroot {

enum class OutputFormat { json, text, dot, ascii };

struct RunConfig {
  std::string command;
  std::string input;    // path or inline JSON plumbing graph
  std::string seifert;  // path or inline JSON Seifert data
  std::string orbit;    // "all", "self-conjugate", an index, or empty for the default
  std::optional<std::int64_t> max_level;
  std::optional<std::uint64_t> budget;
  bool assume_conjecture = false;
  OutputFormat format = OutputFormat::text;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int bad_input = 1;
inline constexpr int invalid = 2;
inline constexpr int capacity = 3;
inline constexpr int conjecture_required = 4;
inline constexpr int ambiguous = 5;
}  // namespace exit_code

/// Runs one command, writing the report to out and diagnostics to err.
/// Returns the process exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace latticeroot
