#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace tailstat {

/// Resolve a worker-count request: 0 means hardware concurrency.
inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Apply fn(i) for i in [0, count) across `threads` workers. Each index is
/// handled exactly once and fn must write only to its own slot, so the
/// result is identical for any worker count.
template <typename Fn>
void parallel_for_index(std::size_t count, unsigned threads, Fn&& fn) {
  threads = resolve_threads(threads);
  if (threads <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  if (threads > count) threads = static_cast<unsigned>(count);
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([w, threads, count, &fn] {
      for (std::size_t i = w; i < count; i += threads) fn(i);
    });
  }
  for (auto& worker : workers) worker.join();
}

}  // namespace tailstat
