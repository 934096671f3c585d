#pragma once

#include <rwre/harness/config.hpp>
#include <rwre/harness/record.hpp>

#include <vector>

namespace rwre::harness {

struct RunOutcome {
  std::vector<ResultRecord> records;
  bool verdict_failure = false;  // a checked condition did not pass
};

/// Executes one experiment. Records are deterministic given (config, seed)
/// and independent of the thread count. Throws ConfigError for invalid
/// configurations and NumericalError for solver failures; the CLI maps these
/// to exit codes 1 and 3 (verdict failures under --strict map to 2).
RunOutcome run(const ExperimentConfig& config);

}  // namespace rwre::harness
