#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace lmcca::detail {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Static block partition over [0, total). Each worker owns a contiguous
// range, so results land in preallocated slots and the outcome does not
// depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t total, int threads, Fn&& fn) {
  threads = resolve_threads(threads);
  if (total == 0) return;
  if (threads <= 1 || total == 1) {
    for (std::size_t i = 0; i < total; ++i) fn(i);
    return;
  }
  std::size_t workers = std::min<std::size_t>(threads, total);
  std::size_t chunk = (total + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t lo = w * chunk;
    std::size_t hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace lmcca::detail
