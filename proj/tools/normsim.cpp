#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "normsim/cli/commands.hpp"
#include "normsim/error.hpp"
#include "normsim/version.hpp"

namespace {

using namespace normsim;
using namespace normsim::cli;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Belief-based social norm model: simulation, coefficient tables, verification"};
  app.set_version_flag("--version", std::string(kArtifactName) + " " + std::string(kVersion));
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Run seeded replications from a JSON config");
  std::string config_path;
  SimulateOverrides overrides;
  std::uint64_t seed = 0;
  int reps = 0;
  std::string out_dir;
  unsigned threads = 0;
  bool strict = false;
  sim->add_option("--config,config", config_path, "Config file or a previous run manifest")
      ->required();
  auto* seed_opt = sim->add_option("--seed", seed, "Override the seed");
  auto* reps_opt = sim->add_option("--reps", reps, "Override the replication count");
  auto* out_opt = sim->add_option("--out", out_dir, "Output directory");
  auto* threads_opt = sim->add_option("--threads", threads, "Worker threads, 0 for all cores");
  auto* strict_opt =
      sim->add_flag("--strict-interior", strict, "Exit 3 when an interior-only formula meets a corner");

  // coeffs
  auto* coeffs = app.add_subcommand("coeffs", "Tabulate disclosure weights and sensitivities");
  CoeffsRequest request;
  std::vector<std::string> kind_names, regime_names;
  std::string table_path;
  coeffs->add_option("--mu-s", request.mu_s, "Prior mean")->capture_default_str();
  coeffs->add_option("--theta", request.theta, "Norm sensitivity")->capture_default_str();
  coeffs->add_option("--nu-s", request.nu_s, "Prior variances")->capture_default_str();
  coeffs->add_option("--nu-eps", request.nu_eps, "Signal noise variances")->capture_default_str();
  coeffs->add_option("--k-min", request.k_min, "Smallest previous-group size")->capture_default_str();
  coeffs->add_option("--k-max", request.k_max, "Largest previous-group size")->capture_default_str();
  coeffs->add_option("--kinds", kind_names,
                     "mean_signal, elicited_norm, mean_personal_value, mean_action");
  coeffs->add_option("--regimes", regime_names, "public, private");
  coeffs->add_option("--out", table_path, "Write the CSV here instead of stdout");

  // verify
  auto* verify = app.add_subcommand("verify", "Run the oracle and invariant suites");
  std::string level = "fast";
  unsigned verify_threads = 0;
  verify->add_option("--level", level, "fast or full")
      ->check(CLI::IsMember({"fast", "full"}))
      ->capture_default_str();
  verify->add_option("--threads", verify_threads, "Worker threads, 0 for all cores");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidInput;
  }

  if (*sim) {
    if (*seed_opt) overrides.seed = seed;
    if (*reps_opt) overrides.replications = reps;
    if (*out_opt) overrides.out_dir = out_dir;
    if (*threads_opt) overrides.threads = threads;
    if (*strict_opt) overrides.strict_interior = strict;
    return run_simulate(config_path, overrides, EnvDefaults::from_process(), std::cout, std::cerr);
  }
  if (*coeffs) {
    try {
      if (!kind_names.empty()) {
        request.kinds.clear();
        for (const auto& k : kind_names) request.kinds.push_back(parse_statistic_kind(k));
      }
      if (!regime_names.empty()) {
        request.regimes.clear();
        for (const auto& r : regime_names) request.regimes.push_back(parse_regime(r));
      }
    } catch (const ModelError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kInvalidInput;
    }
    if (!table_path.empty()) request.out_file = table_path;
    return run_coeffs(request, std::cout, std::cerr);
  }
  return run_verify(level == "full" ? VerifyLevel::Full : VerifyLevel::Fast, verify_threads,
                    std::cout, std::cerr);
}
