#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "normsim/cli/config.hpp"
#include "normsim/cli/verify.hpp"
#include "normsim/disclosure.hpp"

namespace normsim::cli {

enum ExitCode : int { kOk = 0, kClaimFailed = 1, kInvalidInput = 2, kCornerViolation = 3 };

/// Writes agents.csv (unless disabled), replications.csv, summary.json and manifest.json.
int run_simulate(const std::filesystem::path& config_path, const SimulateOverrides& overrides,
                 const EnvDefaults& env, std::ostream& out, std::ostream& err);

struct CoeffsRequest {
  double mu_s = 0.0;
  double theta = 1.0;
  std::vector<double> nu_s{0.04, 0.25, 1.0, 4.0};
  std::vector<double> nu_eps{0.04, 0.25, 1.0, 4.0};
  int k_min = 1;
  int k_max = 20;
  std::vector<StatisticKind> kinds{StatisticKind::MeanSignal, StatisticKind::ElicitedNorm,
                                   StatisticKind::MeanPersonalValue, StatisticKind::MeanAction};
  std::vector<Regime> regimes{Regime::Public, Regime::Private};
  /// Empty writes the table to `out`.
  std::optional<std::filesystem::path> out_file;
};

/// Coefficient table with sensitivities and the ranking columns.
int run_coeffs(const CoeffsRequest& request, std::ostream& out, std::ostream& err);

int run_verify(VerifyLevel level, unsigned threads, std::ostream& out, std::ostream& err,
               const CoefficientModel& model = disclosure_coefficients);

}  // namespace normsim::cli
