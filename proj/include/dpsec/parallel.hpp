#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dp {

// Runs fn(i) for i in [0, n) on up to `workers` threads. Callers write results
// into slot i of a preallocated vector, so output order never depends on timing.
// The first exception thrown by any task is rethrown on the calling thread.
template <class F>
void parallel_for(size_t n, int workers, F&& fn) {
  size_t w = std::min<size_t>(workers < 1 ? 1 : size_t(workers), n);
  if (w <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr err;
  std::mutex m;
  std::vector<std::thread> ts;
  for (size_t t = 0; t < w; ++t)
    ts.emplace_back([&] {
      for (;;) {
        size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> g(m);
          if (!err) err = std::current_exception();
          next = n;
          return;
        }
      }
    });
  for (auto& t : ts) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace dp
