#pragma once

#include <rwre/environment/law.hpp>
#include <rwre/geometry/frame.hpp>
#include <rwre/geometry/regions.hpp>
#include <rwre/solver/exit.hpp>

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace rwre::harness {

/// One experiment: a subcommand name plus a single JSON document. CLI flags
/// overlay config fields of the same name before validation. The seed is
/// mandatory.
struct ExperimentConfig {
  std::string experiment;
  nlohmann::json doc;

  std::uint64_t seed = 0;
  int threads = 1;
  std::uint64_t trials = 10000;
  std::uint64_t env_trials = 200;
  std::uint64_t step_cap = 1'000'000;
  bool strict = false;

  bool has(const std::string& key) const { return doc.contains(key); }

  template <typename T>
  T get(const std::string& key) const {
    if (!doc.contains(key)) throw ConfigError("missing config field: " + key);
    return doc.at(key).get<T>();
  }

  template <typename T>
  T get_or(const std::string& key, T fallback) const {
    return doc.contains(key) ? doc.at(key).get<T>() : fallback;
  }

  env::EnvironmentLaw law() const;
  geom::DirectionFrame frame() const;  // from "direction", or e_1 with the law's d
  geom::BoxOverrides overrides() const;
};

/// Parses and validates the overlaid document. Throws ConfigError (CLI exit
/// code 1) on schema violations.
ExperimentConfig parse_config(const std::string& experiment, const nlohmann::json& doc);

/// Region descriptions accepted by exit-prob and simulate, resolved to a
/// solver view.
solver::RegionView parse_region(const ExperimentConfig& config, const nlohmann::json& region);

}  // namespace rwre::harness
