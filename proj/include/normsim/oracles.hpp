#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "normsim/belief.hpp"
#include "normsim/disclosure.hpp"
#include "normsim/simulation.hpp"
#include "normsim/stats.hpp"

namespace normsim {

/// Posterior of S by direct quadrature of prior x likelihood. A coarse pass locates
/// the mass, a fine composite-Simpson pass spans +-12 posterior standard deviations.
/// Throws DegenerateInputError if the likelihood mass is not contained in the grid.
Gaussian numeric_posterior_oracle(const ModelParams& params, const SignalBundle& signals,
                                  int nodes = 20001);

struct RegressionEstimate {
  double slope = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t n = 0;

  bool contains(double value) const { return ci_low <= value && value <= ci_high; }
};

/// Across replications, regresses the designated agent's realized peer assessment
/// (the average of E[S | H_j] over j != i) on (1, y_i, disclosed statistic) and returns
/// the statistic's coefficient with a normal-approximation interval of half-width z * se.
/// The perceived norm is the conditional expectation of that target, so the slope
/// estimates the closed-form on_statistic weight without using it.
RegressionEstimate regression_oracle(const WorldConfig& config, const RunOptions& options = {},
                                     double z = kZ99);

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t draws = 0;
};

/// Nested Monte Carlo estimate of a perceived norm: S is drawn from the quadrature
/// posterior given i's information, a generic other agent's signal is drawn around S,
/// and that agent's first-order posterior mean is averaged. Without group evidence
/// this is the minimal-information norm; with it, the regime decides whether the
/// other agent also conditions on the group mean.
MonteCarloEstimate mc_perceived_norm(const ModelParams& params, double own_signal,
                                     std::optional<GroupEvidence> group, Regime regime,
                                     std::size_t draws, std::uint64_t seed);

/// Monte Carlo estimate of i's expected action of a generic other agent under
/// minimal information and the unit-cost best response. With clamp_at_zero = false the
/// other agent plays the interior rule norm - 1/(2 theta) even when it is negative,
/// which is the reading under which the closed-form empirical expectation holds.
MonteCarloEstimate mc_empirical_expectation(const ModelParams& params, double own_signal,
                                            std::size_t draws, std::uint64_t seed,
                                            bool clamp_at_zero = true);

}  // namespace normsim
