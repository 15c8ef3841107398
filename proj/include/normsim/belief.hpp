#pragma once

#include <optional>

#include "normsim/params.hpp"

namespace normsim {

struct Gaussian {
  double mean = 0.0;
  double variance = 0.0;
};

/// Average private signal of an observed group of `size` agents.
struct GroupEvidence {
  double mean_signal = 0.0;
  int size = 0;
};

/// Evidence held by one agent: their own signal and, optionally, a group average.
struct SignalBundle {
  double own_signal = 0.0;
  std::optional<GroupEvidence> group;
};

/// Posterior weight on one private signal, nu_s / (nu_s + nu_eps).
double shrinkage_weight(const ModelParams& params);

/// r_i = E[S | y_i].
double personal_value(const ModelParams& params, double own_signal);

/// Conjugate posterior of S given the own signal and optional group mean.
/// Throws DegenerateInputError when the group size is not positive.
Gaussian posterior_s(const ModelParams& params, const SignalBundle& signals);

/// Perceived social norm with minimal information, (1 - w) mu_s + w r_i.
double perceived_norm_mi(const ModelParams& params, double own_signal);

/// Unconditional variance of r_i across agents and states.
double personal_value_variance(const ModelParams& params);

/// Var(perceived norm) / Var(r_i) under minimal information, i.e. w^2.
double perceived_norm_variance_ratio(const ModelParams& params);

}  // namespace normsim
