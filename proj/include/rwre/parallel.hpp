#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace rwre::par {

/// Deterministic chunked parallelism: work is split into fixed-size chunks
/// (independent of the thread count), workers pull chunk indices from an
/// atomic counter, and the caller merges per-chunk results in chunk order.
/// Output is therefore identical for any number of threads.
template <class Partial, class Work>
std::vector<Partial> map_chunks(std::uint64_t n, int threads, std::uint64_t chunk_size,
                                Work work /* (chunk_index, lo, hi) -> Partial */) {
  if (chunk_size == 0) chunk_size = 1;
  const std::uint64_t num_chunks = n == 0 ? 0 : (n + chunk_size - 1) / chunk_size;
  std::vector<Partial> partials(num_chunks);
  if (num_chunks == 0) return partials;

  if (threads <= 1 || num_chunks == 1) {
    for (std::uint64_t c = 0; c < num_chunks; ++c) {
      const std::uint64_t lo = c * chunk_size;
      const std::uint64_t hi = std::min(n, lo + chunk_size);
      partials[c] = work(c, lo, hi);
    }
    return partials;
  }

  std::atomic<std::uint64_t> next{0};
  auto runner = [&] {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= num_chunks) return;
      const std::uint64_t lo = c * chunk_size;
      const std::uint64_t hi = std::min(n, lo + chunk_size);
      partials[c] = work(c, lo, hi);
    }
  };
  std::vector<std::thread> pool;
  const int nt = std::min<std::uint64_t>(threads, num_chunks);
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) pool.emplace_back(runner);
  for (auto& t : pool) t.join();
  return partials;
}

/// Default chunk size for Monte Carlo trial loops.
inline constexpr std::uint64_t kTrialChunk = 2048;

}  // namespace rwre::par
