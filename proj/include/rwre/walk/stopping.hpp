#pragma once

#include <rwre/types.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <unordered_set>
#include <vector>

namespace rwre::walk {

/// Composable stopping rules. Entrance/exit conventions: a rule can fire at
/// n = 0 already; the half-space rule fires at the first n with X_n . l > L.
class StoppingSpec {
 public:
  enum class Kind { EnterPoints, ExitRegion, EnterHalfSpace, StepCap, FirstOf };

  static StoppingSpec enter_points(std::vector<Site> points);
  static StoppingSpec exit_region(std::function<bool(const Site&)> inside, std::string name = "region");
  static StoppingSpec enter_half_space(Vec l, double level);
  static StoppingSpec step_cap(std::uint64_t cap);  // cap >= 1
  static StoppingSpec first_of(std::vector<StoppingSpec> specs);  // nonempty

  Kind kind() const { return kind_; }
  const std::vector<StoppingSpec>& children() const { return children_; }

  /// Index of the first firing sub-rule (the rule itself reports 0), or -1.
  /// StepCap rules fire last among simultaneous hits so that censoring is only
  /// reported when nothing else fired.
  int fired(const Site& x, std::uint64_t steps) const;

  /// True when the fired index corresponds to a StepCap rule.
  bool is_cap(int index) const;

 private:
  StoppingSpec() = default;

  bool fires_self(const Site& x, std::uint64_t steps) const;

  Kind kind_ = Kind::StepCap;
  std::vector<StoppingSpec> children_;

  std::shared_ptr<const std::unordered_set<Site, SiteHash, SiteEq>> points_;
  std::function<bool(const Site&)> inside_;
  std::string region_name_;
  Vec l_;
  double level_ = 0.0;
  std::uint64_t cap_ = 0;
};

}  // namespace rwre::walk
