#include "normsim/behavior.hpp"

#include <algorithm>
#include <numeric>

#include "normsim/belief.hpp"
#include "normsim/error.hpp"

namespace normsim {

double utility(double action, double perceived_norm, double theta, double material_payoff) {
  const double deviation = action - perceived_norm;
  return material_payoff - theta * deviation * deviation;
}

double best_response_uce(double perceived_norm, double theta, std::optional<double> action_cap) {
  if (!(theta > 0.0))
    throw ModelError("best response under unit cost needs theta > 0");
  double a = std::max(perceived_norm - 1.0 / (2.0 * theta), 0.0);
  if (action_cap) a = std::min(a, *action_cap);
  return a;
}

double empirical_expectation(const ModelParams& params, double perceived_norm) {
  if (!(params.theta() > 0.0))
    throw ModelError("empirical expectation under unit cost needs theta > 0");
  const double w = shrinkage_weight(params);
  return (1.0 - w) * params.mu_s() + w * perceived_norm - 1.0 / (2.0 * params.theta());
}

GroupGap group_gap(const ModelParams& params, std::span<const double> perceived_norms) {
  if (perceived_norms.empty()) throw DegenerateInputError("group_gap needs at least one agent");
  if (!(params.theta() > 0.0)) throw ModelError("group_gap needs theta > 0");
  const double avg_norm = std::accumulate(perceived_norms.begin(), perceived_norms.end(), 0.0) /
                          static_cast<double>(perceived_norms.size());
  const double w = shrinkage_weight(params);
  const double shift = 1.0 / (2.0 * params.theta());
  GroupGap out;
  out.avg_expectation = (1.0 - w) * params.mu_s() + w * avg_norm - shift;
  out.avg_action = avg_norm - shift;
  out.gap = (1.0 - w) * (params.mu_s() - avg_norm);
  return out;
}

}  // namespace normsim
