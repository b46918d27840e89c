#ifndef RPNORM_PARALLEL_HPP_
#define RPNORM_PARALLEL_HPP_

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rpnorm {

inline unsigned default_thread_count() {
  return std::max(1U, std::thread::hardware_concurrency());
}

/*
 * Calls fn(i) for every i in [0, count) on up to `threads` workers. Work is
 * split into contiguous blocks; fn must only touch state owned by index i.
 * The first exception thrown by any worker is rethrown after all join.
 */
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn &&fn) {
  threads = std::max(1U, threads);
  if (threads == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, count);
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = count * w / workers;
    const std::size_t end = count * (w + 1) / workers;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto &t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace rpnorm

#endif  // RPNORM_PARALLEL_HPP_
