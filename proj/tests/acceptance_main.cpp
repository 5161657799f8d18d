// SPDX-License-Identifier: Apache-2.0
//
// Integration suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion.

#include <cstdio>

#include "qpriv/acceptance.hpp"

int main() {
  std::vector<qpriv::CriterionResult> results = qpriv::run_acceptance("all");
  for (const qpriv::CriterionResult& r : results) {
    std::printf("[%s] %-4s %s -- %s (%.2f s)\n", r.pass ? "PASS" : "FAIL", r.id.c_str(),
                r.name.c_str(), r.detail.c_str(), r.seconds);
  }
  return qpriv::all_passed(results) ? 0 : 1;
}
