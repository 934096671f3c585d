#include <rwre/environment/environment.hpp>

#include <bit>

namespace rwre::env {

std::uint64_t Environment::digest(const geom::LatticeWindow& window) const {
  std::uint64_t h = rng::mix(seed_, 0x44494745u);
  window.for_each([&](const Site& x) {
    TransitionKernel k = kernel_at(x);
    for (Eigen::Index i = 0; i < k.w.size(); ++i) {
      h = rng::mix(h, std::bit_cast<std::uint64_t>(k.w[i]));
    }
  });
  return h;
}

}  // namespace rwre::env
