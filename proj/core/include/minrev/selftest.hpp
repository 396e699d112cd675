#pragma once

#include <string>
#include <vector>

namespace minrev {

/// One acceptance criterion outcome. Budgets are pinned here in code; a
/// correct result over budget still fails.
struct CriterionResult {
  int index = 0;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::string detail;  // failure cause, or short statistics on success
};

struct SelftestOptions {
  int jobs = 1;
  /// Checked-in golden rendering of the translated built-in postulate;
  /// the criterion fails honestly when the file is absent.
  std::string golden_path;
};

/// Runs the nine acceptance criteria in order. Exceptions inside a criterion
/// are caught and reported as failures, never masked.
std::vector<CriterionResult> run_selftest(const SelftestOptions& opts = {});

bool all_passed(const std::vector<CriterionResult>& results);

/// "criterion N [pass|FAIL] name (X.XXs / budget Ys): detail"
std::string format_result(const CriterionResult& r);

}  // namespace minrev
