#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace kam {

// Static range split across worker threads; chunks write disjoint slots, so
// results do not depend on the thread count.
inline void parallel_for(long begin, long end, int num_threads,
                         const std::function<void(long, long)>& chunk) {
  const long total = end - begin;
  if (num_threads <= 1 || total < 256) {
    chunk(begin, end);
    return;
  }
  int workers = num_threads;
  if (workers > static_cast<int>(total)) workers = static_cast<int>(total);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const long step = (total + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    long lo = begin + w * step;
    long hi = std::min(end, lo + step);
    if (lo >= hi) break;
    pool.emplace_back([&chunk, lo, hi] { chunk(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace kam
