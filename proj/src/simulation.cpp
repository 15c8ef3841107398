#include "normsim/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "normsim/belief.hpp"
#include "normsim/error.hpp"
#include "normsim/rng.hpp"
#include "normsim/stats.hpp"

namespace normsim {

void WorldConfig::validate() const {
  if (n_current < 2) throw ModelError("n_current must be >= 2");
  if (n_previous < 1) throw ModelError("n_previous must be >= 1");
  if (replications < 1) throw ModelError("replications must be >= 1");
  if (designated_agent < 0 || designated_agent >= n_current)
    throw ModelError("designated_agent must index a current-group agent");
  if (disclosure == StatisticKind::MeanAction && !(params.theta() > 0.0))
    throw ModelError("theta must be positive for action disclosure");
  if (action_cap && (!std::isfinite(*action_cap) || *action_cap < 0.0))
    throw ModelError("action_cap must be finite and >= 0");
}

WorldSample sample_world(const WorldConfig& config, std::uint64_t replication_index) {
  const CounterRng rng(config.seed);
  const ModelParams& p = config.params;
  const double sd_s = std::sqrt(p.nu_s());
  const double sd_eps = std::sqrt(p.nu_eps());

  WorldSample out;
  out.s = p.mu_s() + sd_s * rng.standard_normal(replication_index, streams::kStandard, 0);
  out.previous_signals.resize(static_cast<std::size_t>(config.n_previous));
  for (std::size_t k = 0; k < out.previous_signals.size(); ++k)
    out.previous_signals[k] =
        out.s + sd_eps * rng.standard_normal(replication_index, streams::kPreviousSignals, k);
  out.current_signals.resize(static_cast<std::size_t>(config.n_current));
  for (std::size_t i = 0; i < out.current_signals.size(); ++i)
    out.current_signals[i] =
        out.s + sd_eps * rng.standard_normal(replication_index, streams::kCurrentSignals, i);
  return out;
}

namespace {

struct PreviousGroupOutcome {
  double value = 0.0;
  int corner_actions = 0;
};

// The previous group is always in the minimal-information case.
PreviousGroupOutcome summarize_previous_group(const WorldConfig& config,
                                              const std::vector<double>& signals,
                                              StatisticKind kind) {
  const ModelParams& p = config.params;
  const bool acts = p.theta() > 0.0;
  PreviousGroupOutcome out;
  double total = 0.0;
  for (double y : signals) {
    const double norm = perceived_norm_mi(p, y);
    if (acts) {
      const double a = best_response_uce(norm, p.theta(), config.action_cap);
      if (a <= 0.0) ++out.corner_actions;
      if (kind == StatisticKind::MeanAction) total += a;
    }
    switch (kind) {
      case StatisticKind::MeanSignal: total += y; break;
      case StatisticKind::ElicitedNorm: total += norm; break;
      case StatisticKind::MeanPersonalValue: total += personal_value(p, y); break;
      case StatisticKind::MeanAction: break;
    }
  }
  out.value = total / static_cast<double>(signals.size());
  return out;
}

}  // namespace

ReplicationResult run_replication(const WorldConfig& config, std::uint64_t replication_index,
                                  bool strict_interior) {
  config.validate();
  const ModelParams& p = config.params;
  const bool acts = p.theta() > 0.0;
  const WorldSample world = sample_world(config, replication_index);

  ReplicationResult result;
  result.index = replication_index;
  result.s_realized = world.s;
  result.previous_signals = world.previous_signals;

  std::optional<double> decoded;
  if (config.disclosure) {
    const PreviousGroupOutcome prev =
        summarize_previous_group(config, world.previous_signals, *config.disclosure);
    result.previous_corner_actions = prev.corner_actions;
    result.disclosed_value = prev.value;
    if (*config.disclosure == StatisticKind::MeanAction && prev.corner_actions > 0 &&
        strict_interior) {
      throw CornerViolation("replication " + std::to_string(replication_index) + ": " +
                            std::to_string(prev.corner_actions) +
                            " previous-group action(s) at the corner under action disclosure");
    }
    try {
      decoded = decode_statistic(
          p, {*config.disclosure, prev.value, config.n_previous, config.regime});
    } catch (const CornerViolation&) {
      if (strict_interior) throw;
      result.disclosure_failed = true;
    }
    result.decoded_mean_signal = decoded;
  }

  const bool with_expectations = !config.disclosure && acts;
  const std::size_t n = world.current_signals.size();
  result.agents.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    AgentRecord& rec = result.agents[i];
    const double y = world.current_signals[i];
    rec.informed = decoded.has_value() &&
                   (config.regime == Regime::Public ||
                    i == static_cast<std::size_t>(config.designated_agent));
    rec.state.own_signal = y;
    rec.state.theta = p.theta();
    rec.state.personal_value = personal_value(p, y);
    if (rec.informed) {
      rec.assessment = posterior_s(p, {y, GroupEvidence{*decoded, config.n_previous}}).mean;
      rec.state.perceived_norm =
          config.regime == Regime::Public
              ? perceived_norm_public(p, y, *decoded, config.n_previous)
              : perceived_norm_private(p, y, *decoded, config.n_previous);
    } else {
      rec.assessment = rec.state.personal_value;
      rec.state.perceived_norm = perceived_norm_mi(p, y);
    }
    if (acts) {
      rec.state.action = best_response_uce(rec.state.perceived_norm, p.theta(), config.action_cap);
      rec.corner = *rec.state.action <= 0.0;
    }
    if (with_expectations)
      rec.state.empirical_expectation = empirical_expectation(p, rec.state.perceived_norm);
  }

  double assessment_total = 0.0;
  double action_total = 0.0;
  for (const auto& rec : result.agents) {
    assessment_total += rec.assessment;
    if (rec.state.action) action_total += *rec.state.action;
  }
  const double others = static_cast<double>(n - 1);
  for (auto& rec : result.agents) {
    rec.peer_assessment = (assessment_total - rec.assessment) / others;
    if (rec.state.action) rec.peer_action = (action_total - *rec.state.action) / others;
  }

  ReplicationSummary& summary = result.summary;
  std::vector<double> values(n), norms(n);
  std::vector<double> expectations;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& rec = result.agents[i];
    values[i] = rec.state.personal_value;
    norms[i] = rec.state.perceived_norm;
    if (rec.corner) ++summary.corner_actions;
    if (rec.state.empirical_expectation) expectations.push_back(*rec.state.empirical_expectation);
  }
  if (with_expectations && strict_interior && summary.corner_actions > 0) {
    throw CornerViolation("replication " + std::to_string(replication_index) + ": " +
                          std::to_string(summary.corner_actions) +
                          " current-group action(s) at the corner while empirical expectations "
                          "assume interior actions");
  }
  summary.var_personal_value = sample_variance(values);
  summary.var_perceived_norm = sample_variance(norms);
  summary.variance_ratio = summary.var_perceived_norm / summary.var_personal_value;
  if (acts) summary.avg_action = action_total / static_cast<double>(n);
  if (with_expectations) {
    summary.avg_expectation = mean(expectations);
    summary.gap = *summary.avg_expectation - *summary.avg_action;
  }
  return result;
}

std::vector<ReplicationResult> run_experiment(const WorldConfig& config,
                                              const RunOptions& options) {
  config.validate();
  const auto total = static_cast<std::size_t>(config.replications);
  std::vector<ReplicationResult> results(total);
  std::vector<std::exception_ptr> errors(total);

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(std::min<std::size_t>(total, 256)));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      try {
        results[i] = run_replication(config, i, options.strict_interior);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  // Fail on the lowest failing index so the reported error is independent of scheduling.
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace normsim
