#include <rwre/harness/config.hpp>

#include <rwre/geometry/lattice.hpp>

namespace rwre::harness {

env::EnvironmentLaw ExperimentConfig::law() const {
  if (!doc.contains("law")) throw ConfigError("missing config field: law");
  try {
    return env::EnvironmentLaw::from_json(doc.at("law"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid law: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid law: ") + e.what());
  }
}

geom::DirectionFrame ExperimentConfig::frame() const {
  if (doc.contains("direction")) {
    const auto dir = doc.at("direction").get<std::vector<double>>();
    Vec l(static_cast<Eigen::Index>(dir.size()));
    for (std::size_t i = 0; i < dir.size(); ++i) l[static_cast<Eigen::Index>(i)] = dir[i];
    try {
      return geom::build_frame(l);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("invalid direction: ") + e.what());
    }
  }
  return geom::axis_frame(law().d());
}

geom::BoxOverrides ExperimentConfig::overrides() const {
  geom::BoxOverrides ov;
  if (doc.contains("width_override")) ov.width = doc.at("width_override").get<double>();
  if (doc.contains("frontal_width_override")) {
    ov.frontal_width = doc.at("frontal_width_override").get<double>();
  }
  return ov;
}

ExperimentConfig parse_config(const std::string& experiment, const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  c.experiment = experiment;
  c.doc = doc;
  if (!doc.contains("seed")) throw ConfigError("config requires a seed");
  try {
    c.seed = doc.at("seed").get<std::uint64_t>();
    c.threads = doc.value("threads", 1);
    c.trials = doc.value("trials", std::uint64_t{10000});
    c.env_trials = doc.value("env_trials", std::uint64_t{200});
    c.step_cap = doc.value("step_cap", std::uint64_t{1'000'000});
    c.strict = doc.value("strict", false);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid config field: ") + e.what());
  }
  if (c.threads < 1) throw ConfigError("threads must be >= 1");
  if (c.step_cap < 1) throw ConfigError("step_cap must be >= 1");
  return c;
}

solver::RegionView parse_region(const ExperimentConfig& config, const nlohmann::json& region) {
  const std::string kind = region.value("kind", "");
  if (kind == "interval") {
    return solver::interval_view(region.at("lo").get<std::int64_t>(),
                                 region.at("hi").get<std::int64_t>());
  }
  const geom::DirectionFrame frame = config.frame();
  if (kind == "box") {
    const auto n0 = region.at("N0").get<std::int64_t>();
    const int level = region.value("level", 0);
    Site anchor = zero_site(frame.d);
    if (region.contains("anchor")) {
      const auto a = region.at("anchor").get<std::vector<std::int64_t>>();
      for (std::size_t i = 0; i < a.size(); ++i) anchor[static_cast<Eigen::Index>(i)] = a[i];
    }
    geom::BoxOverrides ov = config.overrides();
    if (region.contains("width_override")) ov.width = region.at("width_override").get<double>();
    if (region.contains("frontal_width_override")) {
      ov.frontal_width = region.at("frontal_width_override").get<double>();
    }
    return solver::make_view(geom::Box(anchor, level, frame, geom::ScaleSchedule(n0), ov));
  }
  if (kind == "box_spec") {
    const double L = region.at("L").get<double>();
    const double conforming = L * L * L - 1.0;
    const double lt = region.value("l_tilde", conforming);
    return solver::make_view(
        geom::BoxSpecification::for_scale(frame, L, lt, lt != conforming));
  }
  if (kind == "slab_d") {
    std::optional<double> tw;
    if (region.contains("transverse_override")) {
      tw = region.at("transverse_override").get<double>();
    }
    return solver::make_view(geom::Slab::make_d(frame, region.at("L").get<double>(), tw));
  }
  if (kind == "slab_s") {
    std::optional<double> tw;
    if (region.contains("transverse_override")) {
      tw = region.at("transverse_override").get<double>();
    }
    return solver::make_view(
        geom::Slab::make_s(frame, geom::ScaleSchedule(region.at("N0").get<std::int64_t>()),
                           region.value("k", 0), tw));
  }
  if (kind == "parallelogram") {
    Site anchor = zero_site(frame.d);
    if (region.contains("anchor")) {
      const auto a = region.at("anchor").get<std::vector<std::int64_t>>();
      for (std::size_t i = 0; i < a.size(); ++i) anchor[static_cast<Eigen::Index>(i)] = a[i];
    }
    return solver::make_view(
        geom::Parallelogram(anchor, region.at("n").get<std::int64_t>(), frame));
  }
  throw ConfigError("unknown region kind: " + kind);
}

}  // namespace rwre::harness
