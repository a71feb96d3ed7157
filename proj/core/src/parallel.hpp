#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace maxwell::detail {

inline int resolve_threads(int requested) {
  if (requested > 0) {
    return requested;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls body(begin, end) on contiguous slices of [0, count). Slices are
/// disjoint; callers write only to per-index output slots.
template <class Body>
void parallel_for(int count, int threads, Body&& body) {
  threads = std::min(resolve_threads(threads), std::max(count, 1));
  if (threads <= 1) {
    body(0, count);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  const int slice = (count + threads - 1) / threads;
  for (int i = 0; i < threads; ++i) {
    const int begin = i * slice;
    const int end = std::min(count, begin + slice);
    if (begin >= end) {
      break;
    }
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
}

}  // namespace maxwell::detail
