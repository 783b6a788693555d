#ifndef SANCTION_PARALLEL_HPP
#define SANCTION_PARALLEL_HPP

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace sanction {

// Worker cap: SANCTION_SIM_THREADS when set, hardware concurrency otherwise.
inline int worker_threads() {
  if (const char* env = std::getenv("SANCTION_SIM_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

// Static block partition of [0, n). Results must be written by index; the
// split never affects them.
inline void parallel_for(int n, const std::function<void(int)>& fn) {
  const int workers = std::min(worker_threads(), n < 1 ? 1 : n);
  if (workers <= 1 || n < 2) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([=, &fn] {
      for (int i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace sanction

#endif
