#include "normsim/belief.hpp"

#include "normsim/error.hpp"

namespace normsim {

double shrinkage_weight(const ModelParams& params) {
  return params.nu_s() / (params.nu_s() + params.nu_eps());
}

double personal_value(const ModelParams& params, double own_signal) {
  const double w = shrinkage_weight(params);
  return (1.0 - w) * params.mu_s() + w * own_signal;
}

Gaussian posterior_s(const ModelParams& params, const SignalBundle& signals) {
  const double nu_s = params.nu_s();
  const double nu_eps = params.nu_eps();
  double k = 0.0;
  double group_mean = 0.0;
  if (signals.group) {
    if (signals.group->size < 1)
      throw DegenerateInputError("group size must be >= 1 when a group mean is supplied");
    k = static_cast<double>(signals.group->size);
    group_mean = signals.group->mean_signal;
  }
  // Precision weighting: prior 1/nu_s, own signal 1/nu_eps, group mean k/nu_eps.
  const double denom = nu_eps + (k + 1.0) * nu_s;
  return {
      (nu_eps * params.mu_s() + nu_s * signals.own_signal + k * nu_s * group_mean) / denom,
      nu_s * nu_eps / denom,
  };
}

double perceived_norm_mi(const ModelParams& params, double own_signal) {
  const double w = shrinkage_weight(params);
  return (1.0 - w) * params.mu_s() + w * personal_value(params, own_signal);
}

double personal_value_variance(const ModelParams& params) {
  return params.nu_s() * params.nu_s() / (params.nu_s() + params.nu_eps());
}

double perceived_norm_variance_ratio(const ModelParams& params) {
  const double w = shrinkage_weight(params);
  return w * w;
}

}  // namespace normsim
