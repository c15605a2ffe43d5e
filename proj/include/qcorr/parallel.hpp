#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace qcorr {

// Worker count: explicit request > QCORR_THREADS > hardware concurrency.
inline std::size_t resolve_thread_count(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QCORR_THREADS")) {
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed > 0) return static_cast<std::size_t>(parsed);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Runs fn(begin, end) over contiguous chunks of [0, n). Results must be
// written by index (or reduced per chunk and combined in chunk order) so the
// outcome does not depend on the worker count.
template <typename Fn>
void parallel_for_chunks(std::size_t n, std::size_t threads, Fn&& fn) {
  threads = resolve_thread_count(threads);
  if (n == 0) return;
  if (threads <= 1 || n < 2 * threads) {
    fn(std::size_t{0}, n);
    return;
  }
  const std::size_t chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    if (begin >= n) break;
    const std::size_t end = std::min(n, begin + chunk);
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace qcorr
