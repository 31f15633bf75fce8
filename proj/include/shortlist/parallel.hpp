#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace shortlist {

/// Runs fn(i) for i in [0, count). With jobs > 1 the indices are pulled from
/// a shared counter by worker threads; callers must make results
/// schedule-independent (write to index-owned slots or merge integer
/// accumulators). The first exception thrown by any worker is rethrown.
template <typename F>
void parallel_for(long count, int jobs, F&& fn) {
  if (count <= 0) return;
  if (jobs <= 1 || count == 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  const int workers = static_cast<int>(std::min<long>(jobs, count));
  std::atomic<long> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const long i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace shortlist
