#pragma once

#include <functional>
#include <string>
#include <vector>

namespace permgrid::checks {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  std::vector<std::string> notes;  ///< extra report lines, printed indented
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::vector<int> only;  ///< empty runs all fifteen
  bool extended = false;  ///< adds the length-7 basis sweep to criterion 5
  unsigned threads = 1;
  /// Called after each criterion finishes.
  std::function<void(const CriterionResult&)> on_result;
};

inline constexpr int kCriterionCount = 15;

CriterionResult run_criterion(int id, const AcceptanceOptions& options = {});
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// "PASS  3 merge-identity: detail" followed by indented notes; no timings.
std::string format_result(const CriterionResult& r);

}  // namespace permgrid::checks
