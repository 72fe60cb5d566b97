#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace frogsim {

inline int resolve_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs f(i) for i in [0,n) on `workers` threads with static contiguous
// chunking. Work items must be independent; any shared output must be
// indexed by i so the result is the same for every worker count.
template <class F>
void parallel_for(int64_t n, int workers, F&& f) {
  workers = resolve_workers(workers);
  if (n <= 0) return;
  if (workers <= 1 || n == 1) {
    for (int64_t i = 0; i < n; ++i) f(i);
    return;
  }
  const int nthreads = static_cast<int>(std::min<int64_t>(workers, n));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(nthreads));
  const int64_t chunk = (n + nthreads - 1) / nthreads;
  for (int t = 0; t < nthreads; ++t) {
    const int64_t b = t * chunk;
    const int64_t e = std::min(n, b + chunk);
    pool.emplace_back([b, e, &f] {
      for (int64_t i = b; i < e; ++i) f(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace frogsim
