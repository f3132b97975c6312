#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qcolloid {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

// Runs the release checklist, printing one PASS/FAIL line per check.
// A check that throws is reported as a failure with the exception message
// as its detail; the run always continues through the whole list.
std::vector<CheckResult> run_acceptance(std::ostream& out);

}  // namespace qcolloid
