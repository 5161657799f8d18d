// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace qpriv {

struct CriterionResult {
  std::string id;      // e.g. "C3"
  std::string name;
  std::string section;  // ip, ordering, pir, pir-entangled, honesty, classical, runtime
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// Section selectors accepted by run_acceptance (plus "all").
std::vector<std::string> acceptance_sections();

// Runs the acceptance checks for one section, or every check plus the
// overall runtime budget when selector is "all". Checks never throw; a
// failure inside one check fails that check only.
std::vector<CriterionResult> run_acceptance(const std::string& selector);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace qpriv
