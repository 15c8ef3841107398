#include "normsim/cli/config.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>
#include "normsim/error.hpp"

namespace normsim::cli {
namespace {

using nlohmann::json;

std::string field(std::string_view name) { return "field '" + std::string(name) + "'"; }

// Converts a byte offset from the JSON parser into "source:line:col".
std::string locate(std::string_view text, std::size_t byte, std::string_view source) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::string(source) + ":" + std::to_string(line) + ":" + std::to_string(col);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         std::string_view prefix) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key))
      throw ConfigError(field(std::string(prefix) + key), "unknown key");
  }
}

double get_number(const json& obj, const std::string& key, std::string_view path,
                  std::optional<double> fallback) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(field(path), "required number is missing");
  }
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(field(path), "expected a number");
  return v.get<double>();
}

std::int64_t get_integer(const json& obj, const std::string& key, std::string_view path,
                         std::int64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(field(path), "expected an integer");
  return v.get<std::int64_t>();
}

bool get_bool(const json& obj, const std::string& key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) throw ConfigError(field(key), "expected true or false");
  return v.get<bool>();
}

int to_int(std::int64_t v, std::string_view path) {
  if (v < 0 || v > 100'000'000) throw ConfigError(field(path), "out of range");
  return static_cast<int>(v);
}

}  // namespace

EnvDefaults EnvDefaults::from_process() {
  EnvDefaults env;
  if (const char* seed = std::getenv("NORMSIM_SEED"); seed && *seed) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(seed, &end, 10);
    if (end && *end == '\0') env.seed = v;
  }
  if (const char* out = std::getenv("NORMSIM_OUT"); out && *out) env.out_dir = out;
  return env;
}

SimulateSettings parse_simulate_config(std::string_view text, std::string_view source_name,
                                       const SimulateOverrides& overrides,
                                       const EnvDefaults& env) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError(locate(text, e.byte > 0 ? e.byte - 1 : 0, source_name), "invalid JSON");
  }
  if (doc.is_object() && doc.contains("config") && doc.contains("files")) doc = doc.at("config");
  if (!doc.is_object()) throw ConfigError(std::string(source_name), "top level must be an object");

  reject_unknown_keys(doc,
                      {"params", "n_current", "n_previous", "disclosure", "regime",
                       "designated_agent", "replications", "seed", "action_cap",
                       "strict_interior", "write_agents", "threads", "output_dir"},
                      "");

  if (!doc.contains("params") || !doc.at("params").is_object())
    throw ConfigError(field("params"), "required object is missing");
  const json& params = doc.at("params");
  reject_unknown_keys(params, {"mu_s", "nu_s", "nu_eps", "theta"}, "params.");
  const double mu_s = get_number(params, "mu_s", "params.mu_s", std::nullopt);
  const double nu_s = get_number(params, "nu_s", "params.nu_s", std::nullopt);
  const double nu_eps = get_number(params, "nu_eps", "params.nu_eps", std::nullopt);
  const double theta = get_number(params, "theta", "params.theta", 0.0);
  if (!(nu_s > 0.0)) throw ConfigError(field("params.nu_s"), "variance must be > 0");
  if (!(nu_eps > 0.0)) throw ConfigError(field("params.nu_eps"), "variance must be > 0");
  if (theta < 0.0) throw ConfigError(field("params.theta"), "must be >= 0");

  SimulateSettings s;
  try {
    s.world.params = ModelParams{mu_s, nu_s, nu_eps, theta};
  } catch (const ModelError& e) {
    throw ConfigError(field("params"), e.what());
  }

  s.world.n_current = to_int(get_integer(doc, "n_current", "n_current", 10), "n_current");
  s.world.n_previous = to_int(get_integer(doc, "n_previous", "n_previous", 1), "n_previous");
  s.world.replications =
      to_int(get_integer(doc, "replications", "replications", 1000), "replications");
  s.world.designated_agent =
      to_int(get_integer(doc, "designated_agent", "designated_agent", 0), "designated_agent");

  if (doc.contains("disclosure") && !doc.at("disclosure").is_null()) {
    if (!doc.at("disclosure").is_string())
      throw ConfigError(field("disclosure"), "expected null or a statistic name");
    try {
      s.world.disclosure = parse_statistic_kind(doc.at("disclosure").get<std::string>());
    } catch (const ModelError& e) {
      throw ConfigError(field("disclosure"), e.what());
    }
  }
  if (doc.contains("regime")) {
    if (!doc.at("regime").is_string()) throw ConfigError(field("regime"), "expected a string");
    try {
      s.world.regime = parse_regime(doc.at("regime").get<std::string>());
    } catch (const ModelError& e) {
      throw ConfigError(field("regime"), e.what());
    }
  }
  if (doc.contains("action_cap") && !doc.at("action_cap").is_null()) {
    if (!doc.at("action_cap").is_number())
      throw ConfigError(field("action_cap"), "expected null or a number");
    s.world.action_cap = doc.at("action_cap").get<double>();
  }
  if (doc.contains("seed")) {
    if (!doc.at("seed").is_number_unsigned())
      throw ConfigError(field("seed"), "expected a non-negative integer");
    s.world.seed = doc.at("seed").get<std::uint64_t>();
  } else {
    s.world.seed = env.seed.value_or(0);
  }
  s.strict_interior = get_bool(doc, "strict_interior", false);
  s.write_agents = get_bool(doc, "write_agents", true);
  s.threads = static_cast<unsigned>(to_int(get_integer(doc, "threads", "threads", 0), "threads"));
  if (doc.contains("output_dir")) {
    if (!doc.at("output_dir").is_string())
      throw ConfigError(field("output_dir"), "expected a string");
    s.out_dir = doc.at("output_dir").get<std::string>();
  } else if (env.out_dir) {
    s.out_dir = *env.out_dir;
  }

  if (overrides.seed) s.world.seed = *overrides.seed;
  if (overrides.replications) s.world.replications = *overrides.replications;
  if (overrides.out_dir) s.out_dir = *overrides.out_dir;
  if (overrides.strict_interior) s.strict_interior = *overrides.strict_interior;
  if (overrides.threads) s.threads = *overrides.threads;

  try {
    s.world.validate();
  } catch (const ModelError& e) {
    const std::string msg = e.what();
    std::string where = "config";
    for (const char* key : {"n_current", "n_previous", "replications", "designated_agent",
                            "action_cap", "theta"}) {
      if (msg.find(key) != std::string::npos) {
        where = std::string(key) == "theta" ? field("params.theta") : field(key);
        break;
      }
    }
    throw ConfigError(where, msg);
  }
  return s;
}

SimulateSettings load_simulate_config(const std::filesystem::path& path,
                                      const SimulateOverrides& overrides,
                                      const EnvDefaults& env) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string(), "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_simulate_config(buf.str(), path.string(), overrides, env);
}

}  // namespace normsim::cli
