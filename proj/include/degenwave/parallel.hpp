#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace degenwave {

namespace detail {
inline std::atomic<int>& thread_cap_override() {
  static std::atomic<int> cap{0};
  return cap;
}
}  // namespace detail

/// Programmatic parallelism cap (0 = defer to DEGENWAVE_THREADS / auto).
inline void set_thread_cap(int cap) { detail::thread_cap_override().store(cap); }

/// Effective parallelism: explicit cap, else DEGENWAVE_THREADS, else hardware.
inline int thread_cap() {
  if (int cap = detail::thread_cap_override().load(); cap > 0) return cap;
  if (const char* env = std::getenv("DEGENWAVE_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(i) for i in [0, count). Each index owns its output slot, so
/// results are deterministic regardless of scheduling.
inline void parallel_for(int count, const std::function<void(int)>& fn, int max_threads = 0) {
  if (max_threads <= 0) max_threads = thread_cap();
  int workers = std::min(max_threads, count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace degenwave
