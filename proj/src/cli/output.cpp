#include "normsim/cli/output.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "normsim/belief.hpp"
#include "normsim/stats.hpp"
#include "normsim/version.hpp"

namespace normsim::cli {

using nlohmann::json;

std::string format_real(double value) {
  std::array<char, 64> buf{};
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

std::string format_real(const std::optional<double>& value) {
  return value ? format_real(*value) : std::string();
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

OutputFile write_output(const std::filesystem::path& dir, const std::string& name,
                        const std::string& content) {
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
  return {name, sha256_hex(content), content.size()};
}

json config_echo(const SimulateSettings& s) {
  const WorldConfig& w = s.world;
  json params = {{"mu_s", w.params.mu_s()},
                 {"nu_s", w.params.nu_s()},
                 {"nu_eps", w.params.nu_eps()},
                 {"theta", w.params.theta()}};
  return {
      {"params", params},
      {"n_current", w.n_current},
      {"n_previous", w.n_previous},
      {"disclosure", w.disclosure ? json(std::string(to_string(*w.disclosure))) : json(nullptr)},
      {"regime", std::string(to_string(w.regime))},
      {"designated_agent", w.designated_agent},
      {"replications", w.replications},
      {"seed", w.seed},
      {"action_cap", w.action_cap ? json(*w.action_cap) : json(nullptr)},
      {"strict_interior", s.strict_interior},
      {"write_agents", s.write_agents},
  };
}

namespace {

std::string preamble(const SimulateSettings& s) {
  return "# " + std::string(kArtifactName) + " " + std::string(kVersion) +
         " config=" + config_echo(s).dump() + "\n";
}

}  // namespace

std::string agents_csv(const SimulateSettings& s, const std::vector<ReplicationResult>& results) {
  std::ostringstream out;
  out << preamble(s);
  out << "replication,agent,own_signal,informed,personal_value,assessment,perceived_norm,"
         "action,empirical_expectation,peer_assessment,peer_action,corner\n";
  for (const auto& rep : results) {
    for (std::size_t i = 0; i < rep.agents.size(); ++i) {
      const AgentRecord& a = rep.agents[i];
      out << rep.index << ',' << i << ',' << format_real(a.state.own_signal) << ','
          << (a.informed ? 1 : 0) << ',' << format_real(a.state.personal_value) << ','
          << format_real(a.assessment) << ',' << format_real(a.state.perceived_norm) << ','
          << format_real(a.state.action) << ',' << format_real(a.state.empirical_expectation)
          << ',' << format_real(a.peer_assessment) << ',' << format_real(a.peer_action) << ','
          << (a.corner ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

std::string replications_csv(const SimulateSettings& s,
                             const std::vector<ReplicationResult>& results) {
  std::ostringstream out;
  out << preamble(s);
  out << "replication,s_realized,disclosed_value,decoded_mean_signal,disclosure_failed,"
         "previous_corner_actions,avg_action,avg_expectation,gap,var_personal_value,"
         "var_perceived_norm,variance_ratio,corner_actions\n";
  for (const auto& rep : results) {
    const ReplicationSummary& sm = rep.summary;
    out << rep.index << ',' << format_real(rep.s_realized) << ','
        << format_real(rep.disclosed_value) << ',' << format_real(rep.decoded_mean_signal) << ','
        << (rep.disclosure_failed ? 1 : 0) << ',' << rep.previous_corner_actions << ','
        << format_real(sm.avg_action) << ',' << format_real(sm.avg_expectation) << ','
        << format_real(sm.gap) << ',' << format_real(sm.var_personal_value) << ','
        << format_real(sm.var_perceived_norm) << ',' << format_real(sm.variance_ratio) << ','
        << sm.corner_actions << '\n';
  }
  return out.str();
}

std::string summary_json(const SimulateSettings& s,
                         const std::vector<ReplicationResult>& results) {
  std::vector<double> ratios, s_values, values, norms, actions, expectations, gaps, disclosed;
  long corners = 0, previous_corners = 0, failed = 0;
  for (const auto& rep : results) {
    ratios.push_back(rep.summary.variance_ratio);
    s_values.push_back(rep.s_realized);
    if (rep.summary.avg_action) actions.push_back(*rep.summary.avg_action);
    if (rep.summary.avg_expectation) expectations.push_back(*rep.summary.avg_expectation);
    if (rep.summary.gap) gaps.push_back(*rep.summary.gap);
    if (rep.disclosed_value) disclosed.push_back(*rep.disclosed_value);
    corners += rep.summary.corner_actions;
    previous_corners += rep.previous_corner_actions;
    if (rep.disclosure_failed) ++failed;
    for (const auto& a : rep.agents) {
      values.push_back(a.state.personal_value);
      norms.push_back(a.state.perceived_norm);
    }
  }
  auto mean_or_null = [](const std::vector<double>& xs) {
    return xs.empty() ? json(nullptr) : json(mean(xs));
  };
  json doc = {
      {"artifact", std::string(kArtifactName)},
      {"version", std::string(kVersion)},
      {"config", config_echo(s)},
      {"replications", results.size()},
      {"agents_per_replication", s.world.n_current},
      {"expected_variance_ratio", perceived_norm_variance_ratio(s.world.params)},
      {"mean_variance_ratio", mean_or_null(ratios)},
      {"pooled_variance_ratio",
       values.size() > 1 ? json(sample_variance(norms) / sample_variance(values)) : json(nullptr)},
      {"mean_s_realized", mean_or_null(s_values)},
      {"mean_disclosed_value", mean_or_null(disclosed)},
      {"mean_avg_action", mean_or_null(actions)},
      {"mean_avg_expectation", mean_or_null(expectations)},
      {"mean_gap", mean_or_null(gaps)},
      {"corner_actions", corners},
      {"previous_corner_actions", previous_corners},
      {"failed_disclosures", failed},
  };
  return doc.dump(2) + "\n";
}

std::string manifest_json(const SimulateSettings& s, const std::string& started_utc,
                          const std::string& finished_utc, const std::vector<OutputFile>& files) {
  json listed = json::array();
  for (const auto& f : files)
    listed.push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}});
  json doc = {
      {"artifact", std::string(kArtifactName)},
      {"version", std::string(kVersion)},
      {"seed", s.world.seed},
      {"config", config_echo(s)},
      {"started_utc", started_utc},
      {"finished_utc", finished_utc},
      {"files", listed},
  };
  return doc.dump(2) + "\n";
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

}  // namespace normsim::cli
