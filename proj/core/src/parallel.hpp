#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cabdm::detail {

// Runs fn(job) for job in [0, jobs) on up to `workers` threads. Jobs write to
// disjoint slots, so results never depend on scheduling. The first exception
// thrown by any job is rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t jobs, unsigned workers, Fn&& fn) {
  workers = static_cast<unsigned>(std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(jobs, 1)));
  if (workers == 1) {
    for (std::size_t job = 0; job < jobs; ++job) fn(job);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t job = next++; job < jobs; job = next++) {
          try {
            fn(job);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = jobs;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace cabdm::detail
