#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "normsim/behavior.hpp"
#include "normsim/disclosure.hpp"
#include "normsim/params.hpp"

namespace normsim {

/// One two-group experiment: a previous group K forms minimal-information beliefs,
/// a statistic of K is disclosed, and the current group I updates and acts.
struct WorldConfig {
  ModelParams params{0.0, 1.0, 1.0, 1.0};
  int n_current = 2;
  int n_previous = 1;
  /// Empty means the minimal-information case: nothing is disclosed.
  std::optional<StatisticKind> disclosure;
  Regime regime = Regime::Public;
  int replications = 1;
  std::uint64_t seed = 0;
  /// Agent that receives the statistic under private disclosure. Under public
  /// disclosure it is only the agent used by the regression oracle.
  int designated_agent = 0;
  std::optional<double> action_cap;

  /// Throws ModelError on invalid sizes, indices, or a MeanAction disclosure with theta = 0.
  void validate() const;
};

struct WorldSample {
  double s = 0.0;
  std::vector<double> previous_signals;
  std::vector<double> current_signals;
};

/// Draws the latent standard and both groups' signals for one replication.
WorldSample sample_world(const WorldConfig& config, std::uint64_t replication_index);

struct AgentRecord {
  AgentState state;
  bool informed = false;         // conditioned on the disclosed statistic
  double assessment = 0.0;       // E[S | H_i]
  double peer_assessment = 0.0;  // realized average of E[S | H_j] over j != i
  std::optional<double> peer_action;  // realized average action of j != i
  bool corner = false;           // action clamped at zero
};

struct ReplicationSummary {
  std::optional<double> avg_action;
  std::optional<double> avg_expectation;
  std::optional<double> gap;
  double var_personal_value = 0.0;
  double var_perceived_norm = 0.0;
  double variance_ratio = 0.0;
  int corner_actions = 0;
};

struct ReplicationResult {
  std::uint64_t index = 0;
  double s_realized = 0.0;
  std::vector<double> previous_signals;
  int previous_corner_actions = 0;
  std::optional<double> disclosed_value;
  std::optional<double> decoded_mean_signal;
  /// MeanAction with a non-positive average action cannot be decoded; the current
  /// group then stays in the minimal-information case for this replication.
  bool disclosure_failed = false;
  std::vector<AgentRecord> agents;
  ReplicationSummary summary;
};

struct RunOptions {
  /// Throw CornerViolation instead of flagging when an interior-only closed form meets a corner.
  bool strict_interior = false;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
};

ReplicationResult run_replication(const WorldConfig& config, std::uint64_t replication_index,
                                  bool strict_interior = false);

/// Runs all replications (in parallel when allowed) and returns them in index order.
std::vector<ReplicationResult> run_experiment(const WorldConfig& config,
                                              const RunOptions& options = {});

}  // namespace normsim
