#include <iostream>

#include "permgrid/checks/acceptance.hpp"

int main() {
  permgrid::checks::AcceptanceOptions options;
  int failed = 0;
  options.on_result = [&](const permgrid::checks::CriterionResult& r) {
    std::cout << permgrid::checks::format_result(r) << std::flush;
    std::cerr << "criterion " << r.id << " took " << r.seconds << " s\n";
    failed += !r.passed;
  };
  permgrid::checks::run_acceptance(options);
  std::cout << (permgrid::checks::kCriterionCount - failed) << "/" << permgrid::checks::kCriterionCount
            << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
