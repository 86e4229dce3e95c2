#pragma once

#include <string>
#include <vector>

namespace ellgen {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
  /// Wall-clock limit in seconds; 0 means unbounded.
  double limit = 0;
};

/// Runs one acceptance criterion (1..10). Exceptions are reported as failures.
CriterionResult run_criterion(int id);
/// Runs all criteria in order.
std::vector<CriterionResult> run_selfcheck();

/// Overall wall-clock limit for run_selfcheck in seconds.
inline constexpr double kSelfcheckLimit = 180.0;

}  // namespace ellgen
