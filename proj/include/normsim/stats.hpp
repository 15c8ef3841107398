#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace normsim {

/// Two-sided 99% standard normal quantile.
inline constexpr double kZ99 = 2.5758293035489004;

double mean(std::span<const double> xs);
/// Unbiased (n - 1) sample variance. Requires at least two values.
double sample_variance(std::span<const double> xs);

struct OlsFit {
  /// coefficients[0] is the intercept, coefficients[j] belongs to regressors[j - 1].
  std::vector<double> coefficients;
  std::vector<double> std_errors;
  double residual_variance = 0.0;
  std::size_t n = 0;
};

/// Ordinary least squares with an intercept and classical homoskedastic standard
/// errors. Throws DegenerateInputError for a singular design (e.g. a constant regressor).
OlsFit ols_with_intercept(const std::vector<std::span<const double>>& regressors,
                          std::span<const double> response);

}  // namespace normsim
