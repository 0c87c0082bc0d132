#pragma once

#include <string>
#include <vector>

#include "dipolebound/constants.hpp"

namespace dipolebound {

struct CheckResult {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool all_passed() const;
};

/// Cross-checks of the whole library: mass-formula values and identities,
/// the termination theorems, the series growth law, the Coulomb benchmark
/// of the spectral oracle, the physical-dipole no-bound-state sweep and the
/// singular eta-only classification. Deterministic for fixed inputs.
ValidationReport run_validation(const PhysicalConstants& constants, const ExperimentalLeptons& leptons);

}  // namespace dipolebound
