#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "normsim/simulation.hpp"

namespace normsim::cli {

/// Configuration rejected by the schema; `where` is "file:line:col" or "field 'a.b'".
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string where, const std::string& message)
      : std::runtime_error(where + ": " + message), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

private:
  std::string where_;
};

struct SimulateSettings {
  WorldConfig world;
  bool strict_interior = false;
  unsigned threads = 0;
  bool write_agents = true;
  std::filesystem::path out_dir = "normsim_out";
};

/// Command-line values; each one set here wins over the file.
struct SimulateOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> replications;
  std::optional<std::filesystem::path> out_dir;
  std::optional<bool> strict_interior;
  std::optional<unsigned> threads;
};

/// Defaults taken from NORMSIM_SEED and NORMSIM_OUT; they lose to file and flags.
struct EnvDefaults {
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out_dir;

  static EnvDefaults from_process();
};

/// Parses a JSON config document. A run manifest is accepted too: its "config" block is used.
SimulateSettings parse_simulate_config(std::string_view text, std::string_view source_name,
                                       const SimulateOverrides& overrides = {},
                                       const EnvDefaults& env = {});

SimulateSettings load_simulate_config(const std::filesystem::path& path,
                                      const SimulateOverrides& overrides = {},
                                      const EnvDefaults& env = {});

}  // namespace normsim::cli
