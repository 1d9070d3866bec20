#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace qdet {

// Runs fn(0..n-1) across hardware threads. Each index owns its output slot,
// so results are bit-identical to a serial run as long as callers reduce in
// index order.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
  const int workers =
      std::max(1u, std::min(std::thread::hardware_concurrency(), 16u));
  if (n <= 1 || workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace qdet
