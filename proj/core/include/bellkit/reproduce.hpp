#pragma once

#include <string>
#include <vector>

namespace bellkit {

/// One row of the built-in verification matrix. Every quantitative claim
/// the toolkit is expected to reproduce has one row; the acceptance test
/// binary and `bellkit reproduce` both run these.
struct AcceptanceCheck {
  std::string key;
  std::string description;
};

struct CheckResult {
  std::string key;
  bool passed = false;
  double seconds = 0.0;
  std::vector<std::string> details;  // one line per sub-check
};

const std::vector<AcceptanceCheck>& acceptance_checks();

/// Runs one row by key. Unknown keys throw validation_error.
CheckResult run_acceptance_check(const std::string& key);

/// Runs all rows whose key contains `filter` (all rows when empty), in
/// the fixed declaration order.
std::vector<CheckResult> run_acceptance(const std::string& filter = "");

}  // namespace bellkit
