#include <rwre/walk/stopping.hpp>

#include <stdexcept>

namespace rwre::walk {

StoppingSpec StoppingSpec::enter_points(std::vector<Site> points) {
  StoppingSpec s;
  s.kind_ = Kind::EnterPoints;
  auto set = std::make_shared<std::unordered_set<Site, SiteHash, SiteEq>>();
  for (auto& p : points) set->insert(std::move(p));
  s.points_ = std::move(set);
  return s;
}

StoppingSpec StoppingSpec::exit_region(std::function<bool(const Site&)> inside, std::string name) {
  if (!inside) throw std::invalid_argument("StoppingSpec::exit_region: empty predicate");
  StoppingSpec s;
  s.kind_ = Kind::ExitRegion;
  s.inside_ = std::move(inside);
  s.region_name_ = std::move(name);
  return s;
}

StoppingSpec StoppingSpec::enter_half_space(Vec l, double level) {
  StoppingSpec s;
  s.kind_ = Kind::EnterHalfSpace;
  s.l_ = std::move(l);
  s.level_ = level;
  return s;
}

StoppingSpec StoppingSpec::step_cap(std::uint64_t cap) {
  if (cap < 1) throw std::invalid_argument("StoppingSpec::step_cap: cap must be >= 1");
  StoppingSpec s;
  s.kind_ = Kind::StepCap;
  s.cap_ = cap;
  return s;
}

StoppingSpec StoppingSpec::first_of(std::vector<StoppingSpec> specs) {
  if (specs.empty()) throw std::invalid_argument("StoppingSpec::first_of: empty list");
  StoppingSpec s;
  s.kind_ = Kind::FirstOf;
  s.children_ = std::move(specs);
  return s;
}

bool StoppingSpec::fires_self(const Site& x, std::uint64_t steps) const {
  switch (kind_) {
    case Kind::EnterPoints:
      return points_->count(x) > 0;
    case Kind::ExitRegion:
      return !inside_(x);
    case Kind::EnterHalfSpace:
      return l_.dot(to_vec(x)) > level_;
    case Kind::StepCap:
      return steps >= cap_;
    case Kind::FirstOf:
      return fired(x, steps) >= 0;
  }
  return false;
}

int StoppingSpec::fired(const Site& x, std::uint64_t steps) const {
  if (kind_ != Kind::FirstOf) return fires_self(x, steps) ? 0 : -1;
  int cap_hit = -1;
  for (std::size_t i = 0; i < children_.size(); ++i) {
    if (!children_[i].fires_self(x, steps)) continue;
    if (children_[i].kind_ == Kind::StepCap) {
      if (cap_hit < 0) cap_hit = static_cast<int>(i);
      continue;  // caps yield to simultaneous substantive hits
    }
    return static_cast<int>(i);
  }
  return cap_hit;
}

bool StoppingSpec::is_cap(int index) const {
  if (index < 0) return false;
  if (kind_ != Kind::FirstOf) return kind_ == Kind::StepCap;
  return children_[static_cast<std::size_t>(index)].kind_ == Kind::StepCap;
}

}  // namespace rwre::walk
