#pragma once

#include <string>
#include <vector>

#include "csys/report.hpp"
#include "csys/workspace.hpp"

namespace csys {

// Unknown check or group name.
struct UsageError : Error {
  using Error::Error;
};

struct CheckInfo {
  std::string name;
  std::string group;
  std::string summary;
};

const std::vector<CheckInfo>& check_catalog();
std::vector<std::string> check_groups();
// Expands group names (and "all") to check names, sorted and unique; an
// empty selection means "all".
std::vector<std::string> resolve_selection(const std::vector<std::string>& names);

enum class CheckStatus { kPass, kFail, kSkipped };
std::string status_name(CheckStatus s);

struct CheckResult {
  std::string name;
  std::string group;
  CheckStatus status = CheckStatus::kSkipped;
  uint64_t instances = 0;
  uint64_t violations = 0;
  std::string witness;             // first violation, "law: witness"
  std::vector<Violation> kept;     // first few violations
  std::vector<std::string> notes;  // caps applied, fault sites
  std::string reason;              // why skipped
  SuiteParams params;              // effective parameters
  double seconds = 0;
};

struct SuiteReport {
  std::vector<CheckResult> results;  // sorted by name
  size_t count(CheckStatus s) const;
  // 0 all pass, 1 any failure (or any skip when strict)
  int exit_code(bool strict) const;
};

constexpr int kMaxSupported = 3;

// Runs the selected checks on the workspace, applying its [mutate] fault to
// the check the fault aims at. Exceptions inside a check become failures.
SuiteReport run_suite(const Workspace& ws, const std::vector<std::string>& selection, const SuiteParams& params);
CheckResult run_check(const Workspace& ws, const std::string& name, const SuiteParams& params);

// One JSON object per line, sorted by check name, then a summary line. The
// "time_ms" field is the only one that varies between runs.
std::string to_json_lines(const SuiteReport& r);
std::string to_text(const SuiteReport& r);

}  // namespace csys
