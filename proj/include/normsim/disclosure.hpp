#pragma once

#include <string_view>

#include "normsim/params.hpp"

namespace normsim {

/// Scalar summary of the previous group that can be revealed to the current group.
enum class StatisticKind {
  MeanSignal,         // average private signal
  ElicitedNorm,       // average elicited minimal-information perceived norm
  MeanPersonalValue,  // average personal value
  MeanAction,         // average action under the unit-cost environment
};

enum class Regime { Public, Private };

std::string_view to_string(StatisticKind kind);
std::string_view to_string(Regime regime);
/// Accepts snake_case names ("mean_signal", "elicited_norm", ...). Throws ModelError otherwise.
StatisticKind parse_statistic_kind(std::string_view name);
Regime parse_regime(std::string_view name);

struct DisclosedStatistic {
  StatisticKind kind = StatisticKind::MeanSignal;
  double value = 0.0;
  int group_size = 1;
  Regime regime = Regime::Public;

  /// Throws ModelError when group_size < 1 or value is not finite.
  void validate() const;
};

/// Affine weights of a perceived-norm closed form:
///   norm = on_own_signal * y_i + on_prior_mean * mu_s + on_statistic * value + constant.
/// `constant` is zero except for MeanAction, where it carries the 1/(2 theta) shift.
struct LinearCoefficients {
  double on_own_signal = 0.0;
  double on_prior_mean = 0.0;
  double on_statistic = 0.0;
  double constant = 0.0;

  double apply(double own_signal, double prior_mean, double statistic) const {
    return on_own_signal * own_signal + on_prior_mean * prior_mean + on_statistic * statistic +
           constant;
  }
};

/// Forward map from the previous group's mean signal to the reported statistic,
/// with the previous group in the minimal-information case. MeanAction assumes interior actions.
double encode_statistic(const ModelParams& params, StatisticKind kind, double mean_signal);

/// Implied previous-group mean signal. MeanAction needs theta > 0 (ModelError) and a
/// strictly positive average action (CornerViolation).
double decode_statistic(const ModelParams& params, const DisclosedStatistic& stat);

double perceived_norm_public(const ModelParams& params, double own_signal, double mean_signal,
                             int group_size);
double perceived_norm_private(const ModelParams& params, double own_signal, double mean_signal,
                              int group_size);

/// Decode the statistic, then apply the regime's closed form.
double perceived_norm_with_disclosure(const ModelParams& params, double own_signal,
                                      const DisclosedStatistic& stat);

LinearCoefficients disclosure_coefficients(const ModelParams& params, int group_size,
                                           StatisticKind kind, Regime regime);

enum class Sensitivity { NuS, NuEps, GroupSize };

/// Central difference of on_statistic in nu_s or nu_eps (step 1e-5 * max(1, value)),
/// or the unit forward difference in group size.
double coefficient_sensitivity(const ModelParams& params, int group_size, StatisticKind kind,
                               Regime regime, Sensitivity wrt);

}  // namespace normsim
