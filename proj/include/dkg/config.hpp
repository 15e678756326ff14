#pragma once

#include "dkg/solver.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace dkg {

// Validation failure; `key` names the offending entry.
struct ConfigError : std::runtime_error {
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? what : "config key '" + key + "': " + what), key(std::move(key)) {}
  std::string key;
};

// Strict: unknown keys (e.g. "mass" — the solver is massless) are rejected,
// types and ranges are checked, and omitted keys take their defaults.
SolverConfig solver_config_from_json(const nlohmann::json& j);
SolverConfig load_solver_config(const std::string& path);
nlohmann::json to_json(const SolverConfig& c);

}  // namespace dkg
