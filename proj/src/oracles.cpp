#include "normsim/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "normsim/behavior.hpp"
#include "normsim/error.hpp"
#include "normsim/rng.hpp"

namespace normsim {
namespace {

struct Moments {
  double mass;
  double mean;
  double variance;
};

// Composite Simpson moments of the unnormalized log density over [lo, hi].
template <class LogDensity>
Moments simpson_moments(const LogDensity& log_density, double lo, double hi, int nodes) {
  const double h = (hi - lo) / (nodes - 1);
  std::vector<double> lp(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) lp[i] = log_density(lo + i * h);
  const double peak = *std::max_element(lp.begin(), lp.end());
  // Edge density must be negligible relative to the peak, else mass lies outside the grid.
  constexpr double kEdgeLogRatio = -46.0;  // about 1e-20
  if (lp.front() - peak > kEdgeLogRatio || lp.back() - peak > kEdgeLogRatio)
    throw DegenerateInputError("posterior mass extends beyond the integration grid");

  double m0 = 0.0, m1 = 0.0, m2 = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double wgt = (i == 0 || i == nodes - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double s = lo + i * h;
    const double f = wgt * std::exp(lp[i] - peak);
    m0 += f;
    m1 += f * s;
    m2 += f * s * s;
  }
  const double mu = m1 / m0;
  return {m0 * h / 3.0, mu, std::max(m2 / m0 - mu * mu, 0.0)};
}

}  // namespace

Gaussian numeric_posterior_oracle(const ModelParams& params, const SignalBundle& signals,
                                  int nodes) {
  if (nodes < 10001) throw ModelError("quadrature needs at least 10001 nodes");
  if (nodes % 2 == 0) ++nodes;
  double group_size = 0.0;
  double group_mean = 0.0;
  if (signals.group) {
    if (signals.group->size < 1) throw DegenerateInputError("group size must be >= 1");
    group_size = signals.group->size;
    group_mean = signals.group->mean_signal;
  }
  const double mu = params.mu_s();
  const double nu_s = params.nu_s();
  const double nu_eps = params.nu_eps();
  const double y = signals.own_signal;
  auto log_density = [&](double s) {
    double lp = -(s - mu) * (s - mu) / (2.0 * nu_s) - (y - s) * (y - s) / (2.0 * nu_eps);
    if (group_size > 0.0)
      lp -= group_size * (group_mean - s) * (group_mean - s) / (2.0 * nu_eps);
    return lp;
  };

  // Start wide enough to hold the prior and every likelihood term, then recentre on
  // the located mass until the grid spans +-12 posterior standard deviations.
  double lo = std::min({mu, y, signals.group ? group_mean : y});
  double hi = std::max({mu, y, signals.group ? group_mean : y});
  const double spread = 10.0 * std::max(std::sqrt(nu_s), std::sqrt(nu_eps));
  lo -= spread;
  hi += spread;
  Moments m = simpson_moments(log_density, lo, hi, nodes);
  for (int pass = 0; pass < 6; ++pass) {
    const double sd = std::sqrt(m.variance);
    const double new_lo = m.mean - 12.0 * sd;
    const double new_hi = m.mean + 12.0 * sd;
    const bool settled = std::abs(new_lo - lo) < 1e-3 * sd && std::abs(new_hi - hi) < 1e-3 * sd;
    lo = new_lo;
    hi = new_hi;
    m = simpson_moments(log_density, lo, hi, nodes);
    if (settled) break;
  }
  return {m.mean, m.variance};
}

RegressionEstimate regression_oracle(const WorldConfig& config, const RunOptions& options,
                                     double z) {
  if (!config.disclosure) throw ModelError("regression oracle needs a disclosed statistic");
  const auto results = run_experiment(config, options);
  std::vector<double> own, stat, target;
  own.reserve(results.size());
  stat.reserve(results.size());
  target.reserve(results.size());
  const auto i = static_cast<std::size_t>(config.designated_agent);
  for (const auto& rep : results) {
    if (rep.disclosure_failed || !rep.disclosed_value) continue;
    own.push_back(rep.agents[i].state.own_signal);
    stat.push_back(*rep.disclosed_value);
    target.push_back(rep.agents[i].peer_assessment);
  }
  const OlsFit fit = ols_with_intercept({own, stat}, target);
  RegressionEstimate out;
  out.slope = fit.coefficients[2];
  out.std_error = fit.std_errors[2];
  out.ci_low = out.slope - z * out.std_error;
  out.ci_high = out.slope + z * out.std_error;
  out.n = fit.n;
  return out;
}

namespace {

template <class Inner>
MonteCarloEstimate nested_draws(const ModelParams& params, const Gaussian& outer,
                                std::size_t draws, std::uint64_t seed, const Inner& inner) {
  if (draws < 2) throw ModelError("Monte Carlo oracle needs at least two draws");
  NormalSequence rng(seed, 0, streams::kOracle);
  const double sd_s = std::sqrt(outer.variance);
  const double sd_eps = std::sqrt(params.nu_eps());
  double total = 0.0, total_sq = 0.0;
  for (std::size_t d = 0; d < draws; ++d) {
    const double s = outer.mean + sd_s * rng.next();
    const double other_signal = s + sd_eps * rng.next();
    const double v = inner(other_signal);
    total += v;
    total_sq += v * v;
  }
  const double n = static_cast<double>(draws);
  const double m = total / n;
  const double var = std::max((total_sq - n * m * m) / (n - 1.0), 0.0);
  return {m, std::sqrt(var / n), draws};
}

}  // namespace

MonteCarloEstimate mc_perceived_norm(const ModelParams& params, double own_signal,
                                     std::optional<GroupEvidence> group, Regime regime,
                                     std::size_t draws, std::uint64_t seed) {
  const Gaussian outer = numeric_posterior_oracle(params, {own_signal, group});
  if (group && regime == Regime::Public) {
    return nested_draws(params, outer, draws, seed, [&](double other_signal) {
      return posterior_s(params, {other_signal, group}).mean;
    });
  }
  return nested_draws(params, outer, draws, seed,
                      [&](double other_signal) { return personal_value(params, other_signal); });
}

MonteCarloEstimate mc_empirical_expectation(const ModelParams& params, double own_signal,
                                            std::size_t draws, std::uint64_t seed,
                                            bool clamp_at_zero) {
  if (!(params.theta() > 0.0)) throw ModelError("empirical expectation needs theta > 0");
  const Gaussian outer = numeric_posterior_oracle(params, {own_signal, std::nullopt});
  const double shift = 1.0 / (2.0 * params.theta());
  return nested_draws(params, outer, draws, seed, [&](double other_signal) {
    const double norm = perceived_norm_mi(params, other_signal);
    return clamp_at_zero ? best_response_uce(norm, params.theta()) : norm - shift;
  });
}

}  // namespace normsim
