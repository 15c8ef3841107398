#pragma once

#include <optional>
#include <span>

#include "normsim/params.hpp"

namespace normsim {

struct AgentState {
  double own_signal = 0.0;
  double theta = 0.0;
  double perceived_norm = 0.0;
  double personal_value = 0.0;
  std::optional<double> action;
  std::optional<double> empirical_expectation;
};

/// material_payoff - theta (a - perceived_norm)^2. Under the unit-cost environment
/// the material payoff is -a up to a constant.
double utility(double action, double perceived_norm, double theta, double material_payoff);

/// max{perceived_norm - 1/(2 theta), 0}, optionally clamped to an upper cap.
/// Throws ModelError when theta <= 0.
double best_response_uce(double perceived_norm, double theta,
                         std::optional<double> action_cap = std::nullopt);

/// Expected average action of others given i's minimal-information perceived norm,
/// assuming every other agent is interior. May be negative.
double empirical_expectation(const ModelParams& params, double perceived_norm);

struct GroupGap {
  double avg_expectation = 0.0;
  double avg_action = 0.0;
  double gap = 0.0;
};

/// Average empirical expectation against average action for a group with the given
/// minimal-information perceived norms. Throws on an empty group or theta <= 0.
GroupGap group_gap(const ModelParams& params, std::span<const double> perceived_norms);

}  // namespace normsim
