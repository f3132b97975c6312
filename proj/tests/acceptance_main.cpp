#include <iostream>

#include "qcolloid/acceptance.hpp"

int main() {
  std::vector<qcolloid::CheckResult> results =
      qcolloid::run_acceptance(std::cout);
  int failed = 0;
  for (const qcolloid::CheckResult& r : results)
    if (!r.pass) ++failed;
  std::cout << (results.size() - failed) << "/" << results.size()
            << " checks passed\n";
  return failed == 0 ? 0 : 1;
}
