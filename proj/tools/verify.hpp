#pragma once

#include <string>
#include <vector>

namespace coxreg::cli {

struct VerifyOptions {
  std::string fixtures;
  unsigned threads = 1;
};

struct Check {
  std::string id;
  std::string title;
  bool pass = false;
  /// Reported for context; never counted as a failure.
  bool informational = false;
  std::string detail;
  double seconds = 0;
  double budget = 0;
};

/// curve, kunneth, sharpness, theorem, oracle, multmap, wahl, cones, properties.
const std::vector<std::string>& verify_targets();
/// Criterion ids covered by a target, in order.
std::vector<std::string> criteria_of(const std::string& target);
std::vector<std::string> all_criteria();

/// Runs one criterion (e.g. "AC3") or informational line; throws
/// std::invalid_argument for an unknown id.
Check run_check(const std::string& id, const VerifyOptions& opts);
/// Every check of a target, or of all targets for "all".
std::vector<Check> run_target(const std::string& target, const VerifyOptions& opts);

std::string format_check(const Check& c, bool with_time);

}  // namespace coxreg::cli
