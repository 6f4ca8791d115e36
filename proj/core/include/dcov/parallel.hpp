#ifndef DCOV_PARALLEL_HPP
#define DCOV_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace dcov {

/// Worker cap for the parallel loops. Zero means one worker per hardware thread.
struct Threads {
  unsigned count = 1;

  unsigned resolve() const noexcept {
    if (count != 0) return count;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
  }
};

/// Calls fn(i) for i in [0, count), split into contiguous blocks across workers.
/// fn must only write to state owned by index i; results are then independent
/// of the schedule. The first exception thrown by any worker is rethrown.
template <typename Fn>
void parallel_for(std::size_t count, Threads threads, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(threads.resolve(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t block = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * block;
    const std::size_t hi = std::min(count, lo + block);
    pool.emplace_back([&, w, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace dcov

#endif  // DCOV_PARALLEL_HPP
