#ifndef OVALLAB_PARALLEL_HPP
#define OVALLAB_PARALLEL_HPP

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ovallab {

/// Runs fn(0..count-1) across up to `parallelism` worker threads. Callers
/// store results by index, so output ordering is schedule-independent; the
/// first exception is rethrown on the calling thread.
template <class F>
void parallel_for_indexed(int count, int parallelism, F&& fn) {
  if (count <= 0) return;
  const int workers = std::max(1, std::min(parallelism, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ovallab

#endif
