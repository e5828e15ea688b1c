#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace simpkit {

/// Calls fn(i) for i in [0, n) on up to `jobs` threads. Indices are handed
/// out one at a time, so callers write results by index to keep input order.
/// The first exception thrown by any call is rethrown after all threads
/// finish.
template <class Fn>
void parallel_for(size_t n, unsigned jobs, Fn &&fn) {
  const size_t workers = std::min<size_t>(std::max(1u, jobs), n);
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> threads;
    for (size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&] {
        for (size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace simpkit
