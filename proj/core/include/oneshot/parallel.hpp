#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace oneshot::detail {

// Runs body(i) for i in [0, count) on up to `threads` workers, each taking a
// contiguous block. Callers write results into per-index slots so the
// reduction afterwards is independent of the partitioning.
template <typename Body>
void parallel_for(std::int64_t count, int threads, Body&& body) {
  const std::int64_t workers = std::clamp<std::int64_t>(threads, 1, std::max<std::int64_t>(count, 1));
  if (workers <= 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  const std::int64_t block = (count + workers - 1) / workers;
  for (std::int64_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        const std::int64_t lo = w * block, hi = std::min(count, lo + block);
        for (std::int64_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace oneshot::detail
