#pragma once

#include <rwre/environment/law.hpp>
#include <rwre/geometry/regions.hpp>
#include <rwre/rng.hpp>

#include <cstdint>

namespace rwre::env {

/// A quenched environment: the kernel at site x is a pure function of
/// (master_seed, x, law), realized through a counter-based generator keyed on
/// the site. There is no shared mutable state, so concurrent reads from any
/// number of workers see one consistent disorder realization regardless of
/// query order.
class Environment {
 public:
  Environment(EnvironmentLaw law, std::uint64_t master_seed)
      : law_(std::move(law)), seed_(master_seed) {}

  const EnvironmentLaw& law() const { return law_; }
  std::uint64_t seed() const { return seed_; }
  int d() const { return law_.d(); }

  TransitionKernel kernel_at(const Site& x) const {
    rng::Stream stream(rng::site_key(seed_, kSiteSalt, x));
    return law_.sample_kernel(stream);
  }

  /// Order-independent hash of all kernels over a window (exact bit patterns).
  std::uint64_t digest(const geom::LatticeWindow& window) const;

  static constexpr std::uint64_t kSiteSalt = 0x5157454e43484544ULL;

 private:
  EnvironmentLaw law_;
  std::uint64_t seed_;
};

/// Realizes the disorder law: environments with equal (law, seed) agree at
/// every site.
inline Environment sample_environment(EnvironmentLaw law, std::uint64_t master_seed) {
  return Environment(std::move(law), master_seed);
}

}  // namespace rwre::env
