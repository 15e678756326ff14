#include "dkg/config.hpp"

#include <fstream>
#include <set>

namespace dkg {

namespace {

template <class T>
T get(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if constexpr (std::is_same_v<T, bool>) {
    if (!v.is_boolean()) throw ConfigError(key, "expected a boolean");
  } else if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) throw ConfigError(key, "expected a string");
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) throw ConfigError(key, "expected an integer");
    if constexpr (std::is_unsigned_v<T>)
      if (v.get<long long>() < 0) throw ConfigError(key, "must be non-negative");
  } else {
    if (!v.is_number()) throw ConfigError(key, "expected a number");
  }
  return v.get<T>();
}

}  // namespace

SolverConfig solver_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("", "solver config must be a JSON object");
  static const std::set<std::string> known = {"N",     "box",      "dt",     "T",         "s",
                                              "r",     "dealias",  "coupled", "integrator", "preset",
                                              "seed",  "amplitude", "record_every"};
  for (const auto& [k, v] : j.items()) {
    if (k == "mass" || k == "M" || k == "m")
      throw ConfigError(k, "unknown key (the solver is massless, M = m = 0)");
    if (!known.count(k)) throw ConfigError(k, "unknown key");
  }
  SolverConfig c;
  c.N = get(j, "N", c.N);
  c.box = get(j, "box", c.box);
  c.dt = get(j, "dt", c.dt);
  c.T = get(j, "T", c.T);
  c.s = get(j, "s", c.s);
  c.r = get(j, "r", c.r);
  c.dealias = get(j, "dealias", c.dealias);
  c.coupled = get(j, "coupled", c.coupled);
  c.integrator = get(j, "integrator", c.integrator);
  c.preset = get(j, "preset", c.preset);
  c.seed = get(j, "seed", c.seed);
  c.amplitude = get(j, "amplitude", c.amplitude);
  c.record_every = get(j, "record_every", c.record_every);
  if (c.N < 2 || (c.N & (c.N - 1)) != 0) throw ConfigError("N", "must be a power of two >= 2");
  if (!(c.dt > 0)) throw ConfigError("dt", "must be positive");
  if (!(c.T >= 0)) throw ConfigError("T", "must be non-negative");
  if (!(c.box > 0)) throw ConfigError("box", "must be positive");
  if (c.integrator != "ifrk4" && c.integrator != "ifrk2") throw ConfigError("integrator", "must be ifrk4 or ifrk2");
  if (c.preset != "gaussian" && c.preset != "plane-wave" && c.preset != "random-band-limited")
    throw ConfigError("preset", "must be gaussian, plane-wave or random-band-limited");
  if (c.record_every == 0) throw ConfigError("record_every", "must be >= 1");
  return c;
}

SolverConfig load_solver_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("", path + ": " + e.what());
  }
  return solver_config_from_json(j);
}

nlohmann::json to_json(const SolverConfig& c) {
  return {{"N", c.N},         {"box", c.box},         {"dt", c.dt},
          {"T", c.T},         {"s", c.s},             {"r", c.r},
          {"dealias", c.dealias}, {"coupled", c.coupled}, {"integrator", c.integrator},
          {"preset", c.preset}, {"seed", c.seed},     {"amplitude", c.amplitude},
          {"record_every", c.record_every}};
}

}  // namespace dkg
