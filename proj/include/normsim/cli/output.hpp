#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>
#include "normsim/cli/config.hpp"
#include "normsim/simulation.hpp"

namespace normsim::cli {

/// 17 significant digits, enough for every double to round-trip.
std::string format_real(double value);
/// Empty string for a missing value.
std::string format_real(const std::optional<double>& value);

/// Lowercase hex SHA-256 of the given bytes.
std::string sha256_hex(std::string_view bytes);

struct OutputFile {
  std::string name;
  std::string sha256;
  std::uintmax_t bytes = 0;
};

OutputFile write_output(const std::filesystem::path& dir, const std::string& name,
                        const std::string& content);

/// Settings that determine the outputs. Thread count and output directory are excluded.
nlohmann::json config_echo(const SimulateSettings& settings);

std::string agents_csv(const SimulateSettings& settings,
                       const std::vector<ReplicationResult>& results);
std::string replications_csv(const SimulateSettings& settings,
                             const std::vector<ReplicationResult>& results);
std::string summary_json(const SimulateSettings& settings,
                         const std::vector<ReplicationResult>& results);
std::string manifest_json(const SimulateSettings& settings, const std::string& started_utc,
                          const std::string& finished_utc, const std::vector<OutputFile>& files);

std::string utc_timestamp();

}  // namespace normsim::cli
