#pragma once

#include <string>
#include <vector>

#include "shoberry/cli/config.hpp"
#include "shoberry/cli/report.hpp"

namespace shoberry::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  double deviation = 0.0;  // largest observed deviation
  double tolerance = 0.0;
  std::string detail;      // failure message, empty on success
};

struct ValidateOptions {
  /// Test hook: the dynamical-phase oracle is multiplied by 1 + this factor.
  double perturb_dynamical = 0.0;
};

/// Representations of the default battery, (M, w, C, beta) with hbar = 1:
/// (1, 1, 1, 0), (1, 1, 2, 0), (1, 1, 0.5, pi/6), (0.5, 2, 4, -pi/3), (3, 0.5, 1.5, pi/3).
/// A representation given in the configuration is appended to this grid.
std::vector<Representation> default_validation_grid();

/// Runs every invariant check. Each check is isolated: an exception inside
/// one is recorded as its failure and the battery continues.
std::vector<CheckResult> run_validation_battery(const RunConfig& config, const ValidateOptions& options = {});

/// check, status (PASS/FAIL), max_deviation, tolerance, detail.
Table validation_table(const std::vector<CheckResult>& results);

}  // namespace shoberry::cli
