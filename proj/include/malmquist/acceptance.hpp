#pragma once

#include <string>
#include <vector>

namespace malmquist {

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
};

struct AcceptanceOptions {
  // identity tolerance for sn^2 + cn^2 = 1 and dn^2 + k^2 sn^2 = 1;
  // shrinking it is how the suite's fault detection gets exercised
  double elliptic_tol = 1e-10;
  unsigned seed = 20240917u;
  double time_budget_s = 60.0;
};

/// Runs criteria 1..10 in order. Never throws: an exception inside a
/// criterion counts as a failure and its message becomes the detail.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

}  // namespace malmquist
