#pragma once

// The qlock command-line interface as a library, so commands can be driven
// in-process by tests.
//
// Exit codes: 0 success, 1 selftest failure, 2 input error, 3 guard or limit
// error.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qlock/json_io.hpp"
#include "qlock/tolerances.hpp"

namespace qlock::cli {

inline constexpr const char* kSchemaVersion = "1.0";

enum ExitCode : int {
  kSuccess = 0,
  kSelftestFailure = 1,
  kInputError = 2,
  kLimitError = 3,
};

struct RunReport {
  std::string schema_version = kSchemaVersion;
  std::string command;
  Json config_echo;
  Json results;
  std::map<std::string, double> timings_ms;
  std::uint64_t seed = 0;

  bool operator==(const RunReport&) const = default;
};

void to_json(Json& j, const RunReport& r);
void from_json(const Json& j, RunReport& r);

struct SelftestCheck {
  std::string group;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs every invariant group against the given tolerances.
std::vector<SelftestCheck> run_selftest(const Tolerances& tol);

/// Reads tolerance overrides from a JSON object with Tolerances field names.
Tolerances tolerances_from_json(const Json& j);

/// Parses and executes one invocation; argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qlock::cli
