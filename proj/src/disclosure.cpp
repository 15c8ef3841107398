#include "normsim/disclosure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "normsim/belief.hpp"
#include "normsim/error.hpp"

namespace normsim {
namespace {

void require_group_size(int group_size) {
  if (group_size < 1)
    throw DegenerateInputError("group size must be >= 1, got " + std::to_string(group_size));
}

// Affine forward encoding of the previous group's mean signal:
//   statistic = slope * ybar + on_prior * mu_s + offset.
struct Encoding {
  double slope;
  double on_prior;
  double offset;
};

Encoding encoding_of(const ModelParams& params, StatisticKind kind) {
  const double w = shrinkage_weight(params);
  switch (kind) {
    case StatisticKind::MeanSignal:
      return {1.0, 0.0, 0.0};
    case StatisticKind::MeanPersonalValue:
      return {w, 1.0 - w, 0.0};
    case StatisticKind::ElicitedNorm:
      return {w * w, 1.0 - w * w, 0.0};
    case StatisticKind::MeanAction:
      if (!(params.theta() > 0.0))
        throw ModelError("theta must be positive for action disclosure");
      return {w * w, 1.0 - w * w, -1.0 / (2.0 * params.theta())};
  }
  throw ModelError("unknown statistic kind");
}

// Inverse of the minimal-information norm map, ybar from the elicited average norm.
double invert_elicited_norm(const ModelParams& params, double elicited_norm) {
  const double nu_s = params.nu_s();
  const double nu_eps = params.nu_eps();
  const double sum = nu_s + nu_eps;
  return (sum * sum / (nu_s * nu_s)) * elicited_norm -
         (nu_eps * (nu_eps + 2.0 * nu_s) / (nu_s * nu_s)) * params.mu_s();
}

// Weights on (y_i, mu_s, ybar) of the mean-signal closed form for the given regime.
LinearCoefficients mean_signal_coefficients(const ModelParams& params, int group_size,
                                            Regime regime) {
  const double nu_s = params.nu_s();
  const double nu_eps = params.nu_eps();
  const double k = static_cast<double>(group_size);
  const double denom = nu_eps + (k + 1.0) * nu_s;
  const double own = nu_s / denom;
  const double prior = nu_eps / denom;
  const double group = k * nu_s / denom;
  if (regime == Regime::Public) {
    return {own * own, prior * (1.0 + own), group * (1.0 + own), 0.0};
  }
  const double w = shrinkage_weight(params);
  return {w * own, (1.0 - w) + w * prior, w * group, 0.0};
}

}  // namespace

std::string_view to_string(StatisticKind kind) {
  switch (kind) {
    case StatisticKind::MeanSignal: return "mean_signal";
    case StatisticKind::ElicitedNorm: return "elicited_norm";
    case StatisticKind::MeanPersonalValue: return "mean_personal_value";
    case StatisticKind::MeanAction: return "mean_action";
  }
  return "unknown";
}

std::string_view to_string(Regime regime) {
  return regime == Regime::Public ? "public" : "private";
}

StatisticKind parse_statistic_kind(std::string_view name) {
  for (auto kind : {StatisticKind::MeanSignal, StatisticKind::ElicitedNorm,
                    StatisticKind::MeanPersonalValue, StatisticKind::MeanAction}) {
    if (name == to_string(kind)) return kind;
  }
  throw ModelError("unknown statistic kind '" + std::string(name) +
                   "' (expected mean_signal, elicited_norm, mean_personal_value, mean_action)");
}

Regime parse_regime(std::string_view name) {
  if (name == "public") return Regime::Public;
  if (name == "private") return Regime::Private;
  throw ModelError("unknown regime '" + std::string(name) + "' (expected public or private)");
}

void DisclosedStatistic::validate() const {
  require_group_size(group_size);
  if (!std::isfinite(value)) throw ModelError("disclosed statistic value must be finite");
}

double encode_statistic(const ModelParams& params, StatisticKind kind, double mean_signal) {
  switch (kind) {
    case StatisticKind::MeanSignal:
      return mean_signal;
    case StatisticKind::MeanPersonalValue:
      return personal_value(params, mean_signal);
    case StatisticKind::ElicitedNorm:
      return perceived_norm_mi(params, mean_signal);
    case StatisticKind::MeanAction:
      if (!(params.theta() > 0.0))
        throw ModelError("theta must be positive for action disclosure");
      return perceived_norm_mi(params, mean_signal) - 1.0 / (2.0 * params.theta());
  }
  throw ModelError("unknown statistic kind");
}

double decode_statistic(const ModelParams& params, const DisclosedStatistic& stat) {
  stat.validate();
  switch (stat.kind) {
    case StatisticKind::MeanSignal:
      return stat.value;
    case StatisticKind::ElicitedNorm:
      return invert_elicited_norm(params, stat.value);
    case StatisticKind::MeanPersonalValue: {
      // rbar = ((nu_s + nu_eps) / nu_s) Nhat - (nu_eps / nu_s) mu_s, solved for Nhat.
      const double w = shrinkage_weight(params);
      return invert_elicited_norm(params, (1.0 - w) * params.mu_s() + w * stat.value);
    }
    case StatisticKind::MeanAction: {
      if (!(params.theta() > 0.0))
        throw ModelError("theta must be positive for action disclosure");
      if (!(stat.value > 0.0))
        throw CornerViolation("average action " + std::to_string(stat.value) +
                              " is not positive; the action-to-norm map needs interior actions");
      return invert_elicited_norm(params, stat.value + 1.0 / (2.0 * params.theta()));
    }
  }
  throw ModelError("unknown statistic kind");
}

double perceived_norm_public(const ModelParams& params, double own_signal, double mean_signal,
                             int group_size) {
  require_group_size(group_size);
  const double nu_s = params.nu_s();
  const double nu_eps = params.nu_eps();
  const double k = static_cast<double>(group_size);
  const double own_posterior =
      posterior_s(params, {own_signal, GroupEvidence{mean_signal, group_size}}).mean;
  // A generic other agent uses the same public group mean with their own signal,
  // whose expectation given i's information is i's posterior mean.
  return (nu_eps * params.mu_s() + nu_s * own_posterior + k * nu_s * mean_signal) /
         (nu_eps + (k + 1.0) * nu_s);
}

double perceived_norm_private(const ModelParams& params, double own_signal, double mean_signal,
                              int group_size) {
  require_group_size(group_size);
  const double w = shrinkage_weight(params);
  const double own_posterior =
      posterior_s(params, {own_signal, GroupEvidence{mean_signal, group_size}}).mean;
  return (1.0 - w) * params.mu_s() + w * own_posterior;
}

double perceived_norm_with_disclosure(const ModelParams& params, double own_signal,
                                      const DisclosedStatistic& stat) {
  const double mean_signal = decode_statistic(params, stat);
  return stat.regime == Regime::Public
             ? perceived_norm_public(params, own_signal, mean_signal, stat.group_size)
             : perceived_norm_private(params, own_signal, mean_signal, stat.group_size);
}

LinearCoefficients disclosure_coefficients(const ModelParams& params, int group_size,
                                           StatisticKind kind, Regime regime) {
  require_group_size(group_size);
  const LinearCoefficients base = mean_signal_coefficients(params, group_size, regime);
  if (kind == StatisticKind::MeanSignal) return base;

  // Substitute ybar = (statistic - on_prior * mu_s - offset) / slope.
  const Encoding enc = encoding_of(params, kind);
  LinearCoefficients out;
  out.on_own_signal = base.on_own_signal;
  out.on_statistic = base.on_statistic / enc.slope;
  out.on_prior_mean = base.on_prior_mean - out.on_statistic * enc.on_prior;
  out.constant = -out.on_statistic * enc.offset;
  return out;
}

double coefficient_sensitivity(const ModelParams& params, int group_size, StatisticKind kind,
                               Regime regime, Sensitivity wrt) {
  require_group_size(group_size);
  auto slope = [&](const ModelParams& p, int k) {
    return disclosure_coefficients(p, k, kind, regime).on_statistic;
  };
  switch (wrt) {
    case Sensitivity::GroupSize:
      return slope(params, group_size + 1) - slope(params, group_size);
    case Sensitivity::NuS: {
      const double v = params.nu_s();
      const double h = std::min(1e-5 * std::max(1.0, v), 0.5 * v);
      return (slope(params.with_nu_s(v + h), group_size) -
              slope(params.with_nu_s(v - h), group_size)) /
             (2.0 * h);
    }
    case Sensitivity::NuEps: {
      const double v = params.nu_eps();
      const double h = std::min(1e-5 * std::max(1.0, v), 0.5 * v);
      return (slope(params.with_nu_eps(v + h), group_size) -
              slope(params.with_nu_eps(v - h), group_size)) /
             (2.0 * h);
    }
  }
  throw ModelError("unknown sensitivity parameter");
}

}  // namespace normsim
