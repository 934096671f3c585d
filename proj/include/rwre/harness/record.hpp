#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace rwre::harness {

inline constexpr const char* kVersion = "0.1.0";

/// One estimated or exactly computed quantity with its provenance. Records are
/// self-describing: the config digest plus the seed reproduce the run.
struct ResultRecord {
  std::string experiment;
  std::string config_digest;
  std::string quantity;  // one of the documented quantity identifiers
  double value = 0;
  double ci_lo = 0;
  double ci_hi = 0;
  bool exact = false;
  std::uint64_t trials = 0;
  std::uint64_t censored = 0;
  std::uint64_t seed = 0;
  double wall_ms = 0;
  std::string version = kVersion;
  nlohmann::json detail;  // geometry/schedule/verdict payload

  nlohmann::json to_json() const;
  static ResultRecord from_json(const nlohmann::json& j);

  /// Equality on the reproducible fields (everything except wall time).
  bool same_values(const ResultRecord& other) const;
};

/// The documented set of quantity identifiers records may carry.
const std::vector<std::string>& quantity_registry();
bool known_quantity(const std::string& quantity);

/// Fixed CSV column set: experiment, quantity, value, ci_lo, ci_hi, exact,
/// trials, seed.
std::string csv_header();
std::string csv_row(const ResultRecord& record);

void export_csv(const std::vector<ResultRecord>& records, const std::string& path);
void export_jsonl(const std::vector<ResultRecord>& records, const std::string& path);
std::vector<ResultRecord> import_jsonl(const std::string& path);

/// Short hex digest of a canonical JSON document.
std::string config_digest(const nlohmann::json& config);

}  // namespace rwre::harness
