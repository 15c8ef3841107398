#include "normsim/cli/commands.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>
#include "normsim/belief.hpp"
#include "normsim/cli/output.hpp"
#include "normsim/error.hpp"
#include "normsim/version.hpp"

namespace normsim::cli {

int run_simulate(const std::filesystem::path& config_path, const SimulateOverrides& overrides,
                 const EnvDefaults& env, std::ostream& out, std::ostream& err) {
  SimulateSettings settings;
  try {
    settings = load_simulate_config(config_path, overrides, env);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  const std::string started = utc_timestamp();
  std::vector<ReplicationResult> results;
  try {
    results = run_experiment(settings.world,
                             {.strict_interior = settings.strict_interior,
                              .threads = settings.threads});
  } catch (const CornerViolation& e) {
    err << "error: corner violation: " << e.what() << '\n';
    return kCornerViolation;
  } catch (const ModelError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  try {
    std::filesystem::create_directories(settings.out_dir);
    std::vector<OutputFile> files;
    if (settings.write_agents)
      files.push_back(write_output(settings.out_dir, "agents.csv", agents_csv(settings, results)));
    files.push_back(
        write_output(settings.out_dir, "replications.csv", replications_csv(settings, results)));
    files.push_back(
        write_output(settings.out_dir, "summary.json", summary_json(settings, results)));
    write_output(settings.out_dir, "manifest.json",
                 manifest_json(settings, started, utc_timestamp(), files));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  out << "wrote " << results.size() << " replications to " << settings.out_dir.string() << '\n';
  return kOk;
}

namespace {

const char* sign_of(double v) { return v > 0.0 ? "+" : (v < 0.0 ? "-" : "0"); }

void validate(const CoeffsRequest& r) {
  if (r.nu_s.empty() || r.nu_eps.empty()) throw ModelError("variance lists must be non-empty");
  if (r.kinds.empty() || r.regimes.empty())
    throw ModelError("kind and regime lists must be non-empty");
  if (r.k_min < 1) throw ModelError("k_min must be at least 1");
  if (r.k_max < r.k_min) throw ModelError("k_max must not be below k_min");
  for (double s : r.nu_s)
    for (double e : r.nu_eps) ModelParams(r.mu_s, s, e, r.theta);
  for (auto kind : r.kinds)
    if (kind == StatisticKind::MeanAction && !(r.theta > 0.0))
      throw ModelError("theta must be positive for action disclosure");
}

std::string request_echo(const CoeffsRequest& r) {
  nlohmann::json kinds = nlohmann::json::array(), regimes = nlohmann::json::array();
  for (auto k : r.kinds) kinds.push_back(std::string(to_string(k)));
  for (auto g : r.regimes) regimes.push_back(std::string(to_string(g)));
  nlohmann::json doc = {{"mu_s", r.mu_s},   {"theta", r.theta}, {"nu_s", r.nu_s},
                        {"nu_eps", r.nu_eps}, {"k_min", r.k_min}, {"k_max", r.k_max},
                        {"kinds", kinds},   {"regimes", regimes}};
  return doc.dump();
}

}  // namespace

int run_coeffs(const CoeffsRequest& request, std::ostream& out, std::ostream& err) {
  try {
    validate(request);
  } catch (const ModelError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  std::ostringstream table;
  table << "# " << kArtifactName << ' ' << kVersion << " coeffs=" << request_echo(request) << '\n';
  table << "mu_s,theta,nu_s,nu_eps,k,kind,regime,on_own_signal,on_prior_mean,on_statistic,"
           "constant,d_nu_s,sign_nu_s,d_nu_eps,sign_nu_eps,d_k,sign_k,norm_value_ratio,"
           "public_minus_private\n";
  for (double s : request.nu_s)
    for (double e : request.nu_eps) {
      const ModelParams p{request.mu_s, s, e, request.theta};
      for (int k = request.k_min; k <= request.k_max; ++k)
        for (auto kind : request.kinds)
          for (auto regime : request.regimes) {
            const LinearCoefficients c = disclosure_coefficients(p, k, kind, regime);
            const double ds = coefficient_sensitivity(p, k, kind, regime, Sensitivity::NuS);
            const double de = coefficient_sensitivity(p, k, kind, regime, Sensitivity::NuEps);
            const double dk = coefficient_sensitivity(p, k, kind, regime, Sensitivity::GroupSize);
            const double ratio =
                disclosure_coefficients(p, k, StatisticKind::ElicitedNorm, regime).on_statistic /
                disclosure_coefficients(p, k, StatisticKind::MeanPersonalValue, regime)
                    .on_statistic;
            const double gap = disclosure_coefficients(p, k, kind, Regime::Public).on_statistic -
                               disclosure_coefficients(p, k, kind, Regime::Private).on_statistic;
            table << format_real(request.mu_s) << ',' << format_real(request.theta) << ','
                  << format_real(s) << ',' << format_real(e) << ',' << k << ','
                  << to_string(kind) << ',' << to_string(regime) << ','
                  << format_real(c.on_own_signal) << ',' << format_real(c.on_prior_mean) << ','
                  << format_real(c.on_statistic) << ',' << format_real(c.constant) << ','
                  << format_real(ds) << ',' << sign_of(ds) << ',' << format_real(de) << ','
                  << sign_of(de) << ',' << format_real(dk) << ',' << sign_of(dk) << ','
                  << format_real(ratio) << ',' << format_real(gap) << '\n';
          }
    }

  if (request.out_file) {
    try {
      const auto dir = request.out_file->parent_path();
      if (!dir.empty()) std::filesystem::create_directories(dir);
      write_output(dir.empty() ? "." : dir, request.out_file->filename().string(), table.str());
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return kInvalidInput;
    }
  } else {
    out << table.str();
  }
  return kOk;
}

int run_verify(VerifyLevel level, unsigned threads, std::ostream& out, std::ostream& err,
               const CoefficientModel& model) {
  const auto claims = run_verification(level, model, threads);
  const ClaimResult* first_failure = nullptr;
  for (const auto& c : claims) {
    out << (c.passed ? "PASS " : "FAIL ") << c.claim << "  error=" << std::setprecision(3)
        << c.measured_error;
    if (!c.detail.empty()) out << "  (" << c.detail << ')';
    out << '\n';
    if (!c.passed && !first_failure) first_failure = &c;
  }
  if (first_failure) {
    err << "first failing claim: " << first_failure->claim << '\n';
    return kClaimFailed;
  }
  return kOk;
}

}  // namespace normsim::cli
