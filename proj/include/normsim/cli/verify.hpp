#pragma once

#include <functional>
#include <string>
#include <vector>

#include "normsim/disclosure.hpp"

namespace normsim::cli {

enum class VerifyLevel { Fast, Full };

struct ClaimResult {
  std::string claim;
  bool passed = false;
  double measured_error = 0.0;
  std::string detail;
};

/// Source of disclosure weights under test. Swapping it lets the suite be run against a
/// deliberately corrupted table to confirm that the checks bite.
using CoefficientModel =
    std::function<LinearCoefficients(const ModelParams&, int, StatisticKind, Regime)>;

/// Fast: quadrature, identity, round-trip, linearity, sign-grid, ranking and best-response
/// checks. Full adds the Monte Carlo suites (10^5-replication regressions, dispersion,
/// action slope, expected-vs-realized gap).
std::vector<ClaimResult> run_verification(VerifyLevel level,
                                          const CoefficientModel& model = disclosure_coefficients,
                                          unsigned threads = 0);

}  // namespace normsim::cli
