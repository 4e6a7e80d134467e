// Command-line front end. Exit codes: 0 ok, 1 mismatch or internal error,
// 2 invalid arguments, 3 budget refusal.
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sublat/oracle.hpp"

namespace sublat {

inline constexpr const char* kSchemaVersion = "1";

enum ExitCode : int { kExitOk = 0, kExitMismatch = 1, kExitValidation = 2, kExitBudget = 3 };

/// JSON form of a verify report. Elapsed time is included only on request so
/// that reports are byte-stable across runs and worker counts.
nlohmann::json report_to_json(const VerifyReport& report, bool include_timing);

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sublat
