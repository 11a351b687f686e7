#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ftla {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed;
  std::string detail;
};

/// Runs the named invariant suite ("all", "identities", "lemmas", "bounds",
/// or "geometry") with fixed seeds and returns one row per property.
std::vector<CheckResult> run_verify_suite(const std::string& suite);

/// Prints a pass/fail table; returns 0 when everything passed, 3 otherwise
/// (stderr names the first failing property).
int cmd_verify(const std::string& suite);

}  // namespace ftla
