#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace igusa {

struct AcceptanceConfig {
  std::uint64_t seed = 20240611;
  /// Oracle worker threads (0 = hardware concurrency).
  unsigned threads = 0;
  /// Criteria to run (1..8); empty runs all.
  std::vector<int> only;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0;
  double budget_seconds = 0;
  std::string detail;
};

/// Runs the acceptance criteria in order. A criterion fails if any exact
/// check fails, if it throws, or if it exceeds its runtime budget.
std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& config = {});

/// One line per criterion: "[PASS] 1 tate-pole (0.01s / 1s): detail".
void print_acceptance(std::ostream& os, const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace igusa
