#pragma once

#include <string>
#include <vector>

namespace sedflow {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast self-consistency checks of the solver, profiles and spectrum
/// (fixed-point residual and persistence, volume conservation, axis
/// symmetry, characteristic-equation residuals, profile normalisation).
std::vector<CheckResult> run_invariant_checks();

}  // namespace sedflow
